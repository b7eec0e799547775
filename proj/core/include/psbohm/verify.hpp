#pragma once

#include <string>
#include <vector>

namespace psbohm::verify {

/// One verification outcome. criterion 0 marks a module invariant; 1..10 are
/// the numbered acceptance checks the acceptance runner groups by.
struct Check {
  std::string suite;
  std::string name;
  int criterion = 0;
  bool pass = false;
  double value = 0.0;  // measured quantity
  double bound = 0.0;  // acceptance bound it was held against
  std::string detail;
};

/// Named suites: "wigner", "moyal", "cohen", "bohm", "dynamics", or "all".
/// Each run builds its fixtures from scratch and returns every check
/// outcome; throws std::invalid_argument for an unknown name.
std::vector<Check> run_suite(const std::string& name);

std::vector<std::string> suite_names();

/// Formats one check as a single aligned report line.
std::string format_check(const Check& c);

}  // namespace psbohm::verify
