#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace psbohm::specfile {

/// Minimal block-structured run-description format:
///
///   # comment to end of line
///   key value tokens to end of line
///   name {
///     nested entries
///   }
///
/// Keys are unique per block (duplicates are an error); block and value
/// namespaces are separate.
struct Node {
  std::map<std::string, std::string> values;
  std::map<std::string, Node> children;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  bool has_child(const std::string& name) const { return children.count(name) != 0; }
  const std::string& as_string(const std::string& key) const;
  double as_number(const std::string& key) const;
  int as_int(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  const Node& child(const std::string& name) const;
};

Node parse_string(const std::string& text);
Node parse_file(const std::string& path);

/// Deterministic re-serialization: sorted keys, two-space indentation.
std::string canonical(const Node& n);

/// Shortest round-trip decimal form (%.17g).
std::string format_double(double v);

/// Streaming CSV emitter: one header row, then numeric rows at full
/// precision.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);

 private:
  std::ofstream out_;
  std::size_t width_ = 0;
};

/// Reads a CSV written by CsvWriter (or compatible): returns the numeric
/// rows; the header lands in *header when given.
std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header = nullptr);

}  // namespace psbohm::specfile
