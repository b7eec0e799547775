#include "psbohm/specfile.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace psbohm::specfile {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

const std::string& Node::as_string(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw std::invalid_argument("missing key '" + key + "'");
  return it->second;
}

double Node::as_number(const std::string& key) const {
  const std::string& s = as_string(key);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "' is not a number: '" + s + "'");
  }
  if (pos != s.size())
    throw std::invalid_argument("key '" + key + "' has trailing content: '" + s + "'");
  return v;
}

int Node::as_int(const std::string& key) const {
  const double v = as_number(key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw std::invalid_argument("key '" + key + "' is not an integer");
  return i;
}

double Node::number_or(const std::string& key, double fallback) const {
  return has(key) ? as_number(key) : fallback;
}

const Node& Node::child(const std::string& name) const {
  auto it = children.find(name);
  if (it == children.end()) throw std::invalid_argument("missing block '" + name + "'");
  return it->second;
}

Node parse_string(const std::string& text) {
  Node root;
  std::vector<Node*> stack{&root};
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::size_t hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line == "}") {
      if (stack.size() == 1)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": unmatched '}'");
      stack.pop_back();
      continue;
    }
    if (line.back() == '{') {
      const std::string name = trim(line.substr(0, line.size() - 1));
      if (name.empty() || name.find_first_of(" \t") != std::string::npos)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed block header");
      Node& top = *stack.back();
      if (top.children.count(name))
        throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate block '" +
                                    name + "'");
      stack.push_back(&top.children[name]);
      continue;
    }
    const std::size_t sp = line.find_first_of(" \t");
    const std::string key = sp == std::string::npos ? line : line.substr(0, sp);
    const std::string val = sp == std::string::npos ? std::string{} : trim(line.substr(sp + 1));
    Node& top = *stack.back();
    if (top.values.count(key))
      throw std::invalid_argument("line " + std::to_string(lineno) + ": duplicate key '" + key +
                                  "'");
    top.values[key] = val;
  }
  if (stack.size() != 1) throw std::invalid_argument("unterminated block at end of input");
  return root;
}

Node parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

namespace {

void emit(const Node& n, std::ostream& out, int depth) {
  const std::string pad(static_cast<size_t>(2 * depth), ' ');
  for (const auto& [k, v] : n.values) out << pad << k << (v.empty() ? "" : " " + v) << "\n";
  for (const auto& [name, c] : n.children) {
    out << pad << name << " {\n";
    emit(c, out, depth + 1);
    out << pad << "}\n";
  }
}

}  // namespace

std::string canonical(const Node& n) {
  std::ostringstream out;
  emit(n, out, 0);
  return out.str();
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), width_(header.size()) {
  if (!out_) throw std::invalid_argument("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::invalid_argument("csv row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << (i ? "," : "") << format_double(values[i]);
  out_ << "\n";
}

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (first) {
      first = false;
      if (header) *header = cells;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const std::string& c : cells) row.push_back(std::stod(c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace psbohm::specfile
