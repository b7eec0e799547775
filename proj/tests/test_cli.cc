#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

// End-to-end runs of the command line tool, located via PSBOHM_TOOL_PATH.

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const char* tool = std::getenv("PSBOHM_TOOL_PATH");
  REQUIRE(tool != nullptr);
  const std::string cmd = std::string(tool) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::map<std::string, std::string> keyvals(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

double num(const std::map<std::string, std::string>& kv, const std::string& key) {
  REQUIRE(kv.count(key) == 1);
  return std::stod(kv.at(key));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
}

const char* kPacketSpec = R"(hbar 1.0
mass 1.0
grid {
  min -16
  max 16
  count 128
}
state {
  kind coherent
  x0 0.5
  p0 0.3
  dx 1.0
}
)";

const char* kWellSpec = R"(grid {
  min -16
  max 16
  count 128
}
state {
  kind coherent
  x0 0.5
  dx 1.0
}
potential {
  kind harmonic
  omega 1.0
}
)";

std::string spec_path(const char* name, const char* text) {
  const std::string path = std::string("/tmp/psbohm_cli_") + name + ".spec";
  write_file(path, text);
  return path;
}

}  // namespace

TEST_CASE("wigner command reports convention, mass, and samples") {
  const std::string spec = spec_path("packet", kPacketSpec);
  const std::string csv = "/tmp/psbohm_cli_wigner.csv";
  const RunResult r = run("wigner --spec " + spec + " --out " + csv);
  CHECK(r.code == 0);
  const auto kv = keyvals(r.out);
  CHECK(kv.at("CONVENTION").find("unitary-symmetric") != std::string::npos);
  CHECK(num(kv, "GRID_POINTS") == 128.0 * 128.0);
  CHECK(num(kv, "MASS") == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(num(kv, "MIN_VALUE") > -1e-8);
  std::ifstream f(csv);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header == "x,p,value");
  std::remove(csv.c_str());
}

TEST_CASE("measure command accounts for all density weight") {
  const std::string spec = spec_path("packet", kPacketSpec);
  const RunResult r = run("bohm measure --spec " + spec);
  CHECK(r.code == 0);
  const auto kv = keyvals(r.out);
  CHECK(num(kv, "POINTS") <= 128.0);
  CHECK(num(kv, "TOTAL_WEIGHT") + num(kv, "MASKED_DEFICIT") ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("kernel command marks the eta axis profile valid at the origin") {
  const std::string spec = spec_path("packet", kPacketSpec);
  const std::string csv = "/tmp/psbohm_cli_kernel.csv";
  const RunResult r = run("bohm kernel --spec " + spec + " --out " + csv);
  CHECK(r.code == 0);
  const auto kv = keyvals(r.out);
  CHECK(num(kv, "MASKED_FRACTION") > 0.0);
  CHECK(num(kv, "MASKED_FRACTION") < 1.0);
  CHECK(num(kv, "NODE_MASKED_FRACTION") > 0.0);

  std::ifstream f(csv);
  REQUIRE(f.good());
  std::string line;
  std::getline(f, line);  // header
  bool found_origin = false;
  while (std::getline(f, line)) {
    std::istringstream row(line);
    double eta, re, im, valid;
    char c;
    row >> eta >> c >> re >> c >> im >> c >> valid;
    if (std::abs(eta) < 1e-12) {
      found_origin = true;
      CHECK(re == 1.0);
      CHECK(im == 0.0);
      CHECK(valid == 1.0);
    }
  }
  CHECK(found_origin);
  std::remove(csv.c_str());
}

TEST_CASE("momentum outcome command snaps and normalizes") {
  const std::string spec = spec_path("packet", kPacketSpec);
  const RunResult r = run("bohm prob-p --spec " + spec + " --pstar 0.37 --eps-denominator 1e-8");
  CHECK(r.code == 0);
  const auto kv = keyvals(r.out);
  const double dp = 2.0 * M_PI / 32.0;
  const double snapped = num(kv, "P_STAR_SNAPPED");
  CHECK(std::abs(snapped - 0.37) <= dp / 2.0 + 1e-12);
  CHECK(snapped == doctest::Approx(std::round(snapped / dp) * dp).epsilon(1e-12));
  CHECK(num(kv, "FOLDED_TOTAL") == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("position outcome command reproduces the density") {
  const std::string spec = spec_path("packet", kPacketSpec);
  const RunResult r = run("bohm prob-x --spec " + spec + " --eps-node 1e-12");
  CHECK(r.code == 0);
  const auto kv = keyvals(r.out);
  CHECK(num(kv, "SUP_DENSITY_GAP") < 1e-8);
}

TEST_CASE("superposition states load from parallel lists") {
  const char* text = R"(grid {
  min -12
  max 12
  count 256
}
state {
  kind superposition
  centers -2.5 2.5
  momenta 0.7 -0.7
  widths 1.0 1.0
  amps_re 1.0 0.8
}
)";
  const std::string spec = spec_path("super", text);
  const RunResult r = run("bohm measure --spec " + spec);
  CHECK(r.code == 0);
  const auto kv = keyvals(r.out);
  CHECK(num(kv, "TOTAL_WEIGHT") + num(kv, "MASKED_DEFICIT") ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sampled states load from csv and normalize") {
  const std::string csv = "/tmp/psbohm_cli_state.csv";
  {
    std::ofstream f(csv);
    f << "x,re,im\n";
    f.precision(17);
    for (int i = 0; i < 128; ++i) {
      const double x = -16.0 + i * (32.0 / 128.0);
      f << x << "," << 2.0 * std::exp(-x * x / 4.0) << "," << 0.0 << "\n";
    }
  }
  const std::string spec = spec_path("sampled", ("grid {\n  min -16\n  max 16\n  count 128\n}\n"
                                                 "state {\n  kind sampled\n  csv " +
                                                 std::string("/tmp/psbohm_cli_state.csv") +
                                                 "\n}\n")
                                                    .c_str());
  const RunResult r = run("bohm measure --spec " + spec);
  CHECK(r.code == 0);
  const auto kv = keyvals(r.out);
  CHECK(num(kv, "TOTAL_WEIGHT") + num(kv, "MASKED_DEFICIT") ==
        doctest::Approx(1.0).epsilon(1e-9));
  std::remove(csv.c_str());
}

TEST_CASE("evolution command follows the well orbit") {
  const std::string spec = spec_path("well", kWellSpec);
  std::ostringstream cmd;
  cmd.precision(17);
  const double period = 2.0 * M_PI;
  cmd << "evolve --spec " << spec << " --dt " << period / 2048.0 << " --steps 2048";
  const RunResult r = run(cmd.str());
  CHECK(r.code == 0);
  const auto kv = keyvals(r.out);
  CHECK(num(kv, "SNAPSHOTS") == 2.0);
  CHECK(num(kv, "FINAL_T") == doctest::Approx(period).epsilon(1e-9));
  CHECK(num(kv, "FINAL_MEAN_X") == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(num(kv, "FINAL_MEAN_P") == doctest::Approx(0.0).epsilon(1e-5));
  // <H> = (p0^2 + 1/4)/2 + (x0^2 + 1)/2 for this packet
  CHECK(num(kv, "FINAL_ENERGY") == doctest::Approx(0.75).epsilon(1e-6));
}

TEST_CASE("evolution guards map to exit codes") {
  const std::string spec = spec_path("well", kWellSpec);
  // kinetic phase guard: invalid configuration
  CHECK(run("evolve --spec " + spec + " --dt 10 --steps 1").code == 1);
  // support guard: packet runs off the box mid-flight
  const char* fast = R"(grid {
  min -10
  max 10
  count 128
}
state {
  kind coherent
  x0 5.0
  p0 5.0
  dx 1.0
}
)";
  const std::string fspec = spec_path("fast", fast);
  CHECK(run("evolve --spec " + fspec + " --dt 5e-3 --steps 400").code == 2);
}

TEST_CASE("spec errors exit with the invalid-input code") {
  CHECK(run("wigner --spec /nonexistent_dir_xyz/x.spec").code == 1);
  const std::string nogrid = spec_path("nogrid", "state {\n  kind coherent\n}\n");
  CHECK(run("wigner --spec " + nogrid).code == 1);
  const std::string badkind = spec_path("badkind",
                                        "grid {\n  min -10\n  max 10\n  count 128\n}\n"
                                        "state {\n  kind plane\n}\n");
  CHECK(run("wigner --spec " + badkind).code == 1);
}

TEST_CASE("verification dispatch") {
  CHECK(run("verify --suite nonsense").code == 64);
  const RunResult r = run("verify --suite wigner");
  CHECK(r.code == 0);
  const auto kv = keyvals(r.out);
  CHECK(num(kv, "FAILED") == 0.0);
  CHECK(num(kv, "CHECKS") > 0.0);
}

TEST_CASE("missing subcommands are a usage error") {
  CHECK(run("").code != 0);
}
