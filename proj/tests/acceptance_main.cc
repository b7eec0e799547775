// Acceptance gate: runs every verification suite, folds the outcomes into
// one line per numbered acceptance area plus one for module invariants, and
// exits with the number of failing lines.
#include <cstdio>
#include <string>
#include <vector>

#include "psbohm/verify.hpp"

namespace {

const char* kCriterionText[11] = {
    "module invariants",
    "relabeling kernel: closed form and xi independence",
    "measure characteristic factorizes through the kernel",
    "momentum outcome family: closed form, residual, folded law",
    "position outcomes equal the configuration density",
    "kinetic symbol shift and energy-route consistency",
    "squared angular momentum, three routes in 3D",
    "phase-space distribution reference checks",
    "star eigenfunctions of the oscillator energy",
    "time evolution: residual orders, flows, rates",
    "route equivalence for means and probabilities",
};

}  // namespace

int main() {
  std::vector<psbohm::verify::Check> checks = psbohm::verify::run_suite("all");

  int total[11] = {};
  int failed[11] = {};
  std::vector<std::string> failures;
  for (const psbohm::verify::Check& c : checks) {
    const int k = (c.criterion >= 0 && c.criterion <= 10) ? c.criterion : 0;
    ++total[k];
    if (!c.pass) {
      ++failed[k];
      failures.push_back(psbohm::verify::format_check(c));
    }
  }

  int lines_failed = 0;
  for (int k = 1; k <= 10; ++k) {
    const bool ok = failed[k] == 0 && total[k] > 0;
    if (!ok) ++lines_failed;
    std::printf("[%s] criterion %2d: %-58s (%d/%d checks)\n", ok ? "PASS" : "FAIL", k,
                kCriterionText[k], total[k] - failed[k], total[k]);
  }
  {
    const bool ok = failed[0] == 0;
    if (!ok) ++lines_failed;
    std::printf("[%s] %-72s (%d/%d checks)\n", ok ? "PASS" : "FAIL", kCriterionText[0],
                total[0] - failed[0], total[0]);
  }

  if (!failures.empty()) {
    std::printf("\nfailing checks:\n");
    for (const std::string& f : failures) std::printf("  %s\n", f.c_str());
  }
  return lines_failed;
}
