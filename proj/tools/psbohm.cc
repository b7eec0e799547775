#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psbohm/bohm.hpp"
#include "psbohm/cohen.hpp"
#include "psbohm/dynamics.hpp"
#include "psbohm/gaussian_oracle.hpp"
#include "psbohm/madelung.hpp"
#include "psbohm/specfile.hpp"
#include "psbohm/states.hpp"
#include "psbohm/verify.hpp"
#include "psbohm/wavefunction.hpp"
#include "psbohm/wigner.hpp"

namespace {

using namespace psbohm;

// Stable one-line statement of the transform conventions every output is
// expressed in; consumers can assert against it.
constexpr const char* kConvention =
    "transforms:unitary-symmetric|spectrum:+i-exponent|dual:zero-centered";

void emit(const char* key, double v) {
  std::printf("%s=%s\n", key, specfile::format_double(v).c_str());
}

void emit(const char* key, const std::string& v) { std::printf("%s=%s\n", key, v.c_str()); }

std::vector<double> split_numbers(const std::string& s) {
  std::istringstream in(s);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw std::invalid_argument("malformed number list: " + s);
  return out;
}

SpatialGrid grid_from(const specfile::Node& root) {
  if (!root.has_child("grid")) throw std::invalid_argument("spec needs a grid block");
  const specfile::Node& g = root.child("grid");
  const double mn = g.as_number("min"), mx = g.as_number("max");
  const int count = g.as_int("count");
  const int dims = g.has("dims") ? g.as_int("dims") : 1;
  if (mx <= mn) throw std::invalid_argument("grid: max must exceed min");
  SpatialGrid::Axis ax{mn, (mx - mn) / count, count};
  std::vector<SpatialGrid::Axis> axes(static_cast<std::size_t>(dims), ax);
  return SpatialGrid(axes);
}

WaveFunction state_from(const specfile::Node& root, const SpatialGrid& grid, double hbar,
                        double mass) {
  if (!root.has_child("state")) throw std::invalid_argument("spec needs a state block");
  const specfile::Node& s = root.child("state");
  const std::string kind = s.as_string("kind");

  if (kind == "coherent") {
    auto broadcast = [&](const char* key, double fallback) {
      std::vector<double> v = s.has(key) ? split_numbers(s.as_string(key))
                                         : std::vector<double>(1, fallback);
      if (v.size() == 1) v.assign(static_cast<std::size_t>(grid.dims()), v[0]);
      if (v.size() != static_cast<std::size_t>(grid.dims()))
        throw std::invalid_argument(std::string("state: ") + key + " has the wrong length");
      return v;
    };
    return states::coherent(grid, broadcast("x0", 0.0), broadcast("p0", 0.0),
                            broadcast("dx", 1.0), hbar, mass);
  }
  if (kind == "oscillator") {
    return states::oscillator_eigenstate(grid, s.has("n") ? s.as_int("n") : 0, mass,
                                         s.number_or("omega", 1.0), hbar);
  }
  if (kind == "superposition") {
    const std::vector<double> xs = split_numbers(s.as_string("centers"));
    const std::vector<double> ps = split_numbers(s.as_string("momenta"));
    const std::vector<double> ws = split_numbers(s.as_string("widths"));
    const std::vector<double> re = split_numbers(s.as_string("amps_re"));
    const std::vector<double> im = s.has("amps_im") ? split_numbers(s.as_string("amps_im"))
                                                    : std::vector<double>(xs.size(), 0.0);
    if (ps.size() != xs.size() || ws.size() != xs.size() || re.size() != xs.size() ||
        im.size() != xs.size())
      throw std::invalid_argument("state: superposition lists must have equal length");
    std::vector<states::GaussianComponent> parts(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) parts[i] = {xs[i], ps[i], ws[i], cplx(re[i], im[i])};
    return states::gaussian_superposition(grid, parts, hbar, mass);
  }
  if (kind == "lz3d") return states::lz_eigenstate_3d(grid, hbar, mass);
  if (kind == "sampled") {
    const std::vector<std::vector<double>> rows = specfile::read_csv(s.as_string("csv"));
    if (grid.dims() != 1) throw std::invalid_argument("state: sampled input is one-dimensional");
    if (rows.size() != static_cast<std::size_t>(grid.axis(0).count))
      throw std::invalid_argument("state: sampled row count does not match the grid");
    WaveFunction psi;
    psi.grid = grid;
    psi.hbar = hbar;
    psi.mass = mass;
    psi.samples = GridArray<cplx>({grid.axis(0).count});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != 3)
        throw std::invalid_argument("state: sampled rows must be x, re, im");
      if (std::abs(rows[i][0] - grid.coord(0, static_cast<int>(i))) > 1e-9 * grid.span(0))
        throw std::invalid_argument("state: sampled abscissae do not match the grid");
      psi.samples[i] = cplx(rows[i][1], rows[i][2]);
    }
    psi.normalize();
    return psi;
  }
  throw std::invalid_argument("state: unknown kind " + kind);
}

dynamics::Potential potential_from(const specfile::Node& root, const SpatialGrid& grid,
                                   double mass) {
  if (!root.has_child("potential")) return dynamics::free_particle(grid);
  const specfile::Node& p = root.child("potential");
  const std::string kind = p.as_string("kind");
  if (kind == "free") return dynamics::free_particle(grid);
  if (kind == "harmonic") {
    std::vector<double> center(static_cast<std::size_t>(grid.dims()), 0.0);
    if (p.has("center")) {
      center = split_numbers(p.as_string("center"));
      if (center.size() != static_cast<std::size_t>(grid.dims()))
        throw std::invalid_argument("potential: center has the wrong length");
    }
    return dynamics::harmonic(grid, mass, p.number_or("omega", 1.0), center);
  }
  throw std::invalid_argument("potential: unknown kind " + kind);
}

struct Loaded {
  double hbar = 1.0;
  double mass = 1.0;
  SpatialGrid xg;
  SpatialGrid pg;
  WaveFunction psi;
  specfile::Node root;
};

Loaded load(const std::string& spec_path) {
  Loaded l;
  l.root = specfile::parse_file(spec_path);
  l.hbar = l.root.number_or("hbar", 1.0);
  l.mass = l.root.number_or("mass", 1.0);
  l.xg = grid_from(l.root);
  l.pg = momentum_grid(l.xg, l.hbar);
  l.psi = state_from(l.root, l.xg, l.hbar, l.mass);
  return l;
}

void require_1d(const Loaded& l, const char* what) {
  if (l.xg.dims() != 1)
    throw std::invalid_argument(std::string(what) + " supports one-dimensional runs only");
}

// ------------------------------------------------------------- commands ---

void run_wigner(const std::string& spec, const std::string& out) {
  Loaded l = load(spec);
  require_1d(l, "wigner");
  PhaseSpaceFunction F = wigner::wigner_transform(l.psi, l.pg);
  emit("CONVENTION", std::string(kConvention));
  emit("GRID_POINTS", static_cast<double>(F.samples.size()));
  emit("MASS", std::real(quadrature2(l.xg, l.pg, F.samples)));
  emit("MIN_VALUE", wigner::min_value(F));
  if (!out.empty()) {
    specfile::CsvWriter csv(out, {"x", "p", "value"});
    const int np = l.pg.axis(0).count;
    for (std::size_t i = 0; i < F.samples.size(); ++i) {
      const int xi = static_cast<int>(i) / np, pj = static_cast<int>(i) % np;
      csv.row({l.xg.coord(0, xi), l.pg.coord(0, pj), std::real(F.samples[i])});
    }
  }
}

void run_kernel(const std::string& spec, const std::string& out, double eps_node,
                double eps_denominator, double eps_kernel) {
  Loaded l = load(spec);
  require_1d(l, "bohm kernel");
  madelung::MadelungFields fields = madelung::decompose(l.psi, {eps_node});
  cohen::CohenKernel k = bohm::bohm_kernel(l.psi, fields, l.pg, eps_denominator, eps_kernel);
  emit("CONVENTION", std::string(kConvention));
  emit("MASKED_FRACTION", k.masked_fraction);
  emit("NODE_MASKED_FRACTION", fields.masked_fraction);
  const int np = k.pgrid.axis(0).count;
  const SpatialGrid etag = k.pgrid.dual();
  const std::size_t center_row = static_cast<std::size_t>(k.xgrid.axis(0).count / 2) *
                                 static_cast<std::size_t>(np);
  if (!out.empty()) {
    specfile::CsvWriter csv(out, {"eta", "re", "im", "valid"});
    for (int j = 0; j < np; ++j) {
      const std::size_t lin = center_row + static_cast<std::size_t>(j);
      csv.row({etag.coord(0, j), std::real(k.samples[lin]), std::imag(k.samples[lin]),
               k.mask[lin] ? 0.0 : 1.0});
    }
  }
}

void run_measure(const std::string& spec, const std::string& out, double eps_node) {
  Loaded l = load(spec);
  madelung::MadelungFields fields = madelung::decompose(l.psi, {eps_node});
  bohm::BohmMeasure m = bohm::bohm_measure(fields);
  emit("CONVENTION", std::string(kConvention));
  emit("POINTS", static_cast<double>(m.points.size()));
  emit("TOTAL_WEIGHT", m.total_weight);
  emit("MASKED_DEFICIT", m.masked_deficit);
  if (!out.empty()) {
    std::vector<std::string> header;
    const char* xs[] = {"x", "y", "z"};
    const char* ps[] = {"px", "py", "pz"};
    for (int d = 0; d < m.dims; ++d) header.emplace_back(xs[d]);
    for (int d = 0; d < m.dims; ++d) header.emplace_back(ps[d]);
    header.emplace_back("weight");
    specfile::CsvWriter csv(out, header);
    std::vector<double> row;
    for (const bohm::MeasurePoint& pt : m.points) {
      row.clear();
      for (int d = 0; d < m.dims; ++d) row.push_back(pt.x[d]);
      for (int d = 0; d < m.dims; ++d) row.push_back(pt.momentum[d]);
      row.push_back(pt.weight);
      csv.row(row);
    }
  }
}

void run_prob_p(const std::string& spec, const std::string& out, double eps_node, double p_star,
                double eps_denominator) {
  Loaded l = load(spec);
  require_1d(l, "bohm prob-p");
  madelung::MadelungFields fields = madelung::decompose(l.psi, {eps_node});
  cohen::CohenKernel k = bohm::bohm_kernel(l.psi, fields, l.pg, eps_denominator);
  bohm::MomentumStarGen sg = bohm::momentum_stargenfunction(k, l.pg, p_star);
  bohm::BohmMeasure m = bohm::bohm_measure(fields);
  bohm::MomentumDistribution dist = bohm::momentum_probability(m, sg);
  const double dp = l.pg.axis(0).step;
  double total = 0.0;
  for (double v : dist.folded) total += v * dp;
  emit("CONVENTION", std::string(kConvention));
  emit("P_STAR_SNAPPED", sg.p_star);
  emit("FOLDED_TOTAL", total);
  if (!out.empty()) {
    specfile::CsvWriter csv(out, {"p", "folded", "histogram"});
    for (int j = 0; j < l.pg.axis(0).count; ++j)
      csv.row({l.pg.coord(0, j), dist.folded[static_cast<std::size_t>(j)],
               dist.histogram[static_cast<std::size_t>(j)]});
  }
}

void run_prob_x(const std::string& spec, const std::string& out, double eps_node) {
  Loaded l = load(spec);
  require_1d(l, "bohm prob-x");
  madelung::MadelungFields fields = madelung::decompose(l.psi, {eps_node});
  bohm::BohmMeasure m = bohm::bohm_measure(fields);
  cohen::CohenKernel k = bohm::bohm_kernel(l.psi, fields, l.pg);
  GridArray<double> P = bohm::position_probability(m, k);
  double sup = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i)
    sup = std::max(sup, std::abs(P[i] - std::norm(l.psi.samples[i])));
  emit("CONVENTION", std::string(kConvention));
  emit("SUP_DENSITY_GAP", sup);
  if (!out.empty()) {
    specfile::CsvWriter csv(out, {"x", "value", "density"});
    for (int i = 0; i < l.xg.axis(0).count; ++i)
      csv.row({l.xg.coord(0, i), P[static_cast<std::size_t>(i)],
               std::norm(l.psi.samples[static_cast<std::size_t>(i)])});
  }
}

void run_evolve(const std::string& spec, const std::string& out, double dt, int steps,
                int sample_every) {
  Loaded l = load(spec);
  require_1d(l, "evolve");
  dynamics::Potential v = potential_from(l.root, l.xg, l.mass);
  dynamics::PropagatorConfig cfg;
  cfg.dt = dt;
  cfg.steps = steps;
  cfg.sample_every = sample_every;
  std::vector<WaveFunction> snaps = dynamics::propagate(l.psi, v, cfg);

  std::vector<int> snap_steps;
  snap_steps.push_back(0);
  for (int s = 1; s <= steps; ++s)
    if (s == steps || (sample_every > 0 && s % sample_every == 0)) snap_steps.push_back(s);

  const PolySymbol ax = PolySymbol::monomial_1d(1, 0, cplx(1.0));
  const PolySymbol ap = PolySymbol::monomial_1d(0, 1, cplx(1.0));
  const ops::Action ham = ops::hamiltonian(v.values);

  specfile::CsvWriter* csv = nullptr;
  specfile::CsvWriter csv_store = out.empty()
                                      ? specfile::CsvWriter("/dev/null", {"t"})
                                      : specfile::CsvWriter(out, {"t", "mean_x", "mean_p", "energy", "norm"});
  if (!out.empty()) csv = &csv_store;

  double fx = 0.0, fp = 0.0, fe = 0.0;
  for (std::size_t s = 0; s < snaps.size(); ++s) {
    const double t = snap_steps[s] * dt;
    fx = dynamics::expectation_schrodinger(snaps[s], ax);
    fp = dynamics::expectation_schrodinger(snaps[s], ap);
    fe = std::real(ops::expectation(snaps[s], ham));
    if (csv) csv->row({t, fx, fp, fe, snaps[s].norm()});
  }
  emit("CONVENTION", std::string(kConvention));
  emit("SNAPSHOTS", static_cast<double>(snaps.size()));
  emit("FINAL_T", snap_steps.back() * dt);
  emit("FINAL_MEAN_X", fx);
  emit("FINAL_MEAN_P", fp);
  emit("FINAL_ENERGY", fe);
}

int run_verify(const std::string& suite) {
  std::vector<std::string> known = verify::suite_names();
  known.emplace_back("all");
  bool ok = false;
  for (const std::string& s : known) ok = ok || s == suite;
  if (!ok) {
    std::fprintf(stderr, "unknown suite: %s\n", suite.c_str());
    return 64;
  }
  std::vector<verify::Check> checks = verify::run_suite(suite);
  int failed = 0;
  for (const verify::Check& c : checks) {
    std::printf("%s\n", verify::format_check(c).c_str());
    if (!c.pass) ++failed;
  }
  std::printf("CHECKS=%zu\nFAILED=%d\n", checks.size(), failed);
  return failed > 63 ? 63 : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space toolkit for the guidance-flow representation"};
  app.require_subcommand(1);

  std::string spec, out, suite = "all";
  double eps_node = 1e-6, eps_denominator = 1e-6, eps_kernel = 1e-8;
  double dt = 1e-3, p_star = 0.0;
  int steps = 1, sample_every = 0;
  int exit_code = 0;

  auto add_spec = [&](CLI::App* c) {
    c->add_option("--spec", spec, "run description file")->required();
    c->add_option("--out", out, "CSV output path");
  };

  CLI::App* wig = app.add_subcommand("wigner", "phase-space distribution of the state");
  add_spec(wig);
  wig->callback([&] { run_wigner(spec, out); });

  CLI::App* bo = app.add_subcommand("bohm", "guidance-flow constructions");
  bo->require_subcommand(1);

  CLI::App* ker = bo->add_subcommand("kernel", "relabeling kernel (eta profile at xi = 0)");
  add_spec(ker);
  ker->add_option("--eps-node", eps_node, "node mask threshold");
  ker->add_option("--eps-denominator", eps_denominator, "denominator mask threshold");
  ker->add_option("--eps-kernel", eps_kernel, "kernel magnitude mask threshold");
  ker->callback([&] { run_kernel(spec, out, eps_node, eps_denominator, eps_kernel); });

  CLI::App* mea = bo->add_subcommand("measure", "configuration-space guidance measure");
  add_spec(mea);
  mea->add_option("--eps-node", eps_node, "node mask threshold");
  mea->callback([&] { run_measure(spec, out, eps_node); });

  CLI::App* pp = bo->add_subcommand("prob-p", "momentum outcome distribution");
  add_spec(pp);
  pp->add_option("--eps-node", eps_node, "node mask threshold");
  pp->add_option("--eps-denominator", eps_denominator, "denominator mask threshold");
  pp->add_option("--pstar", p_star, "target momentum (snapped to the grid)");
  pp->callback([&] { run_prob_p(spec, out, eps_node, p_star, eps_denominator); });

  CLI::App* px = bo->add_subcommand("prob-x", "position outcome distribution");
  add_spec(px);
  px->add_option("--eps-node", eps_node, "node mask threshold");
  px->callback([&] { run_prob_x(spec, out, eps_node); });

  CLI::App* ev = app.add_subcommand("evolve", "split-step propagation with observable track");
  add_spec(ev);
  ev->add_option("--dt", dt, "time step")->required();
  ev->add_option("--steps", steps, "step count")->required();
  ev->add_option("--sample-every", sample_every, "snapshot stride (0: ends only)");
  ev->callback([&] { run_evolve(spec, out, dt, steps, sample_every); });

  CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("--suite", suite, "wigner | moyal | cohen | bohm | dynamics | all");
  ver->callback([&] { exit_code = run_verify(suite); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const psbohm::cohen::MaskError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return exit_code;
}
