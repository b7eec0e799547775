#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "psbohm/specfile.hpp"

using namespace psbohm;

namespace {

const char* kSample = R"(# run description
hbar 1.0
label packet run
grid {
  min -10
  max 10
  count 256
}
state {
  kind coherent
  x0 0.5  # trailing comment
}
)";

std::string tmp_path(const char* name) { return std::string("/tmp/") + name; }

}  // namespace

TEST_CASE("parsing recovers keys, blocks, and comment stripping") {
  const specfile::Node n = specfile::parse_string(kSample);
  CHECK(n.as_number("hbar") == 1.0);
  CHECK(n.as_string("label") == "packet run");
  CHECK(n.child("grid").as_int("count") == 256);
  CHECK(n.child("grid").as_number("min") == -10.0);
  CHECK(n.child("state").as_string("kind") == "coherent");
  CHECK(n.child("state").as_number("x0") == 0.5);
  CHECK(n.has("hbar"));
  CHECK(!n.has("mass"));
  CHECK(n.number_or("mass", 2.5) == 2.5);
  CHECK(n.has_child("grid"));
  CHECK(!n.has_child("potential"));
}

TEST_CASE("canonical form is stable under reparsing") {
  const specfile::Node n = specfile::parse_string(kSample);
  const std::string c1 = specfile::canonical(n);
  const std::string c2 = specfile::canonical(specfile::parse_string(c1));
  CHECK(c1 == c2);
  CHECK(c1.find("grid {") != std::string::npos);
}

TEST_CASE("malformed inputs are rejected with line context") {
  CHECK_THROWS_AS(specfile::parse_string("a 1\na 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(specfile::parse_string("b {\nx 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(specfile::parse_string("}\n"), std::invalid_argument);
  CHECK_THROWS_AS(specfile::parse_string("b {\n}\nb {\n}\n"), std::invalid_argument);
  CHECK_THROWS_AS(specfile::parse_string("two words {\n}\n"), std::invalid_argument);
  try {
    specfile::parse_string("ok 1\nbad {\n");
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("unterminated") != std::string::npos);
  }
}

TEST_CASE("typed accessors validate their content") {
  const specfile::Node n = specfile::parse_string("a 1.5 extra\nb 2.5\nc three\nd 2.25\n");
  CHECK_THROWS_AS(n.as_number("a"), std::invalid_argument);
  CHECK_THROWS_AS(n.as_number("c"), std::invalid_argument);
  CHECK_THROWS_AS(n.as_int("d"), std::invalid_argument);
  CHECK_THROWS_AS(n.as_number("missing"), std::invalid_argument);
  CHECK_THROWS_AS(n.child("missing"), std::invalid_argument);
  CHECK(n.as_number("b") == 2.5);
}

TEST_CASE("numbers survive the round-trip format") {
  for (double v : {1.0, -0.1, 1e-17, 3.141592653589793, 123456789.123456789}) {
    const double back = std::stod(specfile::format_double(v));
    CHECK(back == v);
  }
}

TEST_CASE("csv writer and reader round-trip rows exactly") {
  const std::string path = tmp_path("psbohm_test_roundtrip.csv");
  {
    specfile::CsvWriter w(path, {"x", "value"});
    w.row({0.1, -2.5e-13});
    w.row({0.2, 7.75});
  }
  std::vector<std::string> header;
  const auto rows = specfile::read_csv(path, &header);
  REQUIRE(header.size() == 2);
  CHECK(header[0] == "x");
  CHECK(header[1] == "value");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == 0.1);
  CHECK(rows[0][1] == -2.5e-13);
  CHECK(rows[1][1] == 7.75);
  std::remove(path.c_str());
}

TEST_CASE("csv guards") {
  const std::string path = tmp_path("psbohm_test_guard.csv");
  specfile::CsvWriter w(path, {"a", "b"});
  CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(specfile::CsvWriter("/nonexistent_dir_xyz/f.csv", {"a"}), std::invalid_argument);
  CHECK_THROWS_AS(specfile::read_csv("/nonexistent_dir_xyz/f.csv"), std::invalid_argument);
  CHECK_THROWS_AS(specfile::parse_file("/nonexistent_dir_xyz/f.spec"), std::invalid_argument);
  std::remove(path.c_str());
}
