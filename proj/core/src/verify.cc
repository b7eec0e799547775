#include "psbohm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "psbohm/bohm.hpp"
#include "psbohm/cohen.hpp"
#include "psbohm/dynamics.hpp"
#include "psbohm/fourier.hpp"
#include "psbohm/gaussian_oracle.hpp"
#include "psbohm/madelung.hpp"
#include "psbohm/moyal.hpp"
#include "psbohm/states.hpp"
#include "psbohm/wigner.hpp"

namespace psbohm::verify {
namespace {

// Shared desk-scale fixtures. The reference packet has unit width so its
// kernel, curvature energy, and momentum spread are simple closed numbers.
SpatialGrid box512() { return SpatialGrid::centered(1, 20.0, 512); }

oracle::CoherentParams reference_params() { return {0.0, 0.0, 1.0, 1.0, 1.0}; }

WaveFunction reference_packet(const SpatialGrid& xg) {
  return states::coherent(xg, {0.0}, {0.0}, {1.0});
}

WaveFunction displaced_packet(const SpatialGrid& xg) {
  return states::coherent(xg, {0.6}, {0.4}, {1.0});
}

WaveFunction two_packet_superposition(const SpatialGrid& xg) {
  std::vector<states::GaussianComponent> parts(2);
  parts[0] = {-2.5, 0.7, 1.0, cplx(1.0, 0.0)};
  parts[1] = {2.5, -0.7, 1.0, cplx(0.8, 0.0)};
  return states::gaussian_superposition(xg, parts);
}

void push(std::vector<Check>& out, const std::string& suite, const std::string& name,
          int criterion, double value, double bound, std::string detail = {}) {
  Check c;
  c.suite = suite;
  c.name = name;
  c.criterion = criterion;
  c.value = value;
  c.bound = bound;
  c.pass = std::isfinite(value) && value <= bound;
  c.detail = std::move(detail);
  out.push_back(std::move(c));
}

void push_window(std::vector<Check>& out, const std::string& suite, const std::string& name,
                 int criterion, double value, double lo, double hi, std::string detail = {}) {
  Check c;
  c.suite = suite;
  c.name = name;
  c.criterion = criterion;
  c.value = value;
  c.bound = hi;
  c.pass = std::isfinite(value) && value >= lo && value <= hi;
  char buf[64];
  std::snprintf(buf, sizeof buf, "window [%g, %g]", lo, hi);
  c.detail = detail.empty() ? std::string(buf) : detail + "; " + buf;
  out.push_back(std::move(c));
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- wigner ---

void suite_wigner(std::vector<Check>& out) {
  const std::string su = "wigner";
  const SpatialGrid xg = box512();
  const SpatialGrid pg = momentum_grid(xg, 1.0);
  const int nx = xg.axis(0).count, np = pg.axis(0).count;

  auto closed_form_gap = [&](const WaveFunction& psi, const oracle::CoherentParams& c) {
    PhaseSpaceFunction F = wigner::wigner_transform(psi, pg);
    double sup = 0.0;
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < np; ++j) {
        const double ref = oracle::wigner(c, xg.coord(0, i), pg.coord(0, j));
        sup = std::max(sup, std::abs(std::real(F.samples[static_cast<std::size_t>(i) * np + j]) - ref));
      }
    return sup;
  };

  const WaveFunction psi = reference_packet(xg);
  push(out, su, "distribution matches the closed Gaussian form", 7,
       closed_form_gap(psi, reference_params()), 1e-8);
  push(out, su, "displaced packet matches the closed form", 7,
       closed_form_gap(displaced_packet(xg), {0.6, 0.4, 1.0, 1.0, 1.0}), 1e-8);

  PhaseSpaceFunction F = wigner::wigner_transform(psi, pg);
  const oracle::CoherentParams c = reference_params();

  GridArray<double> mx = wigner::marginal_position(F);
  double sup = 0.0;
  for (int i = 0; i < nx; ++i)
    sup = std::max(sup, std::abs(mx[static_cast<std::size_t>(i)] - oracle::position_density(c, xg.coord(0, i))));
  push(out, su, "position marginal equals the density", 7, sup, 1e-8);

  GridArray<double> mp = wigner::marginal_momentum(F);
  sup = 0.0;
  for (int j = 0; j < np; ++j)
    sup = std::max(sup, std::abs(mp[static_cast<std::size_t>(j)] - oracle::momentum_density(c, pg.coord(0, j))));
  push(out, su, "momentum marginal equals the momentum density", 7, sup, 1e-8);

  const double mass = std::real(quadrature2(xg, pg, F.samples));
  push(out, su, "total mass is one", 0, std::abs(mass - 1.0), 1e-10);

  WaveFunction osc1 = states::oscillator_eigenstate(xg, 1);
  const double mn = wigner::min_value(wigner::wigner_transform(osc1, pg));
  Check neg;
  neg.suite = su;
  neg.name = "first excited state goes negative";
  neg.criterion = 7;
  neg.value = mn;
  neg.bound = -0.1;
  neg.pass = mn < -0.1;
  neg.detail = "min value, classical distributions stay nonnegative";
  out.push_back(std::move(neg));
}

// ----------------------------------------------------------------- moyal ---

void suite_moyal(std::vector<Check>& out) {
  const std::string su = "moyal";
  const SpatialGrid xg = SpatialGrid::centered(1, 12.0, 128);
  const SpatialGrid pg = momentum_grid(xg, 1.0);
  const int nx = xg.axis(0).count;

  GridArray<double> v({nx});
  for (int i = 0; i < nx; ++i) {
    const double x = xg.coord(0, i);
    v[static_cast<std::size_t>(i)] = 0.5 * x * x;
  }
  const ops::Action ham = ops::hamiltonian(v);

  PolySymbol hsym = PolySymbol::monomial_1d(0, 2, cplx(0.5));
  hsym.add(PolyTerm{{2, 0, 0}, {0, 0, 0}, cplx(0.5)});
  const WeylSymbol hw(hsym, 1.0);

  moyal::StarGenFunction gens[2];
  for (int n = 0; n < 2; ++n) {
    WaveFunction e = states::oscillator_eigenstate(xg, n);
    gens[n] = moyal::stargenfunction_projector(e, ham, oracle::oscillator_energy(n, 1.0, 1.0), pg);
    push(out, su,
         n == 0 ? "ground projector is a star eigenfunction of the energy"
                : "first excited projector is a star eigenfunction of the energy",
         8, moyal::stargen_residual(hw, gens[n].symbol, gens[n].eigenvalue), 1e-6,
         "eigenvalue " + num(gens[n].eigenvalue));

    GridArray<cplx> hs = hsym.sample(xg, pg);
    for (std::size_t i = 0; i < hs.size(); ++i) hs[i] *= gens[n].symbol.samples[i];
    const double ratio = std::real(quadrature2(xg, pg, hs)) /
                         std::real(quadrature2(xg, pg, gens[n].symbol.samples));
    push(out, su,
         n == 0 ? "energy mean against the ground projector" : "energy mean against the first excited projector",
         8, std::abs(ratio - gens[n].eigenvalue), 1e-6, "level spacing resolved by the pairing");
  }

  // Cross-route consistency: x star W by the polynomial (Bopp) route and by
  // the spectral twisted-convolution route, on a fine grid of its own. The
  // sampled operand is windowed to a smooth compact profile: the spectral
  // route needs operands that stay clear of the periodic seam, and the state
  // tail makes the windowed region irrelevant to the product. The wide box
  // keeps the taper gentle enough for its interpolant to track it closely.
  {
    const SpatialGrid xf = SpatialGrid::centered(1, 24.0, 512);
    const SpatialGrid pf = momentum_grid(xf, 1.0);
    const WaveFunction e0 = states::oscillator_eigenstate(xf, 0);
    const PhaseSpaceFunction wf = wigner::wigner_transform(e0, pf);

    const WeylSymbol xpoly(PolySymbol::monomial_1d(1, 0, cplx(1.0)), 1.0);
    WeylSymbol left_poly = moyal::moyal_star(xpoly, WeylSymbol(wf));

    auto ramp = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    auto window = [&](double ax) {
      const double t = (ax - 7.0) / 15.0;
      if (t <= 0.0) return 1.0;
      if (t >= 1.0) return 0.0;
      return ramp(1.0 - t) / (ramp(t) + ramp(1.0 - t));
    };
    PhaseSpaceFunction xfield = make_phase_function(xf, pf, 1.0);
    xfield.samples = coord_power_samples(xf, pf, false, 0, 1);
    const int nxf = xf.axis(0).count;
    const int npf = pf.axis(0).count;
    for (int i = 0; i < nxf; ++i) {
      const double w = window(std::abs(xf.coord(0, i)));
      for (int j = 0; j < npf; ++j)
        xfield.samples[static_cast<std::size_t>(i) * static_cast<std::size_t>(npf) +
                       static_cast<std::size_t>(j)] *= w;
    }
    WeylSymbol left_tw = moyal::moyal_star(WeylSymbol(std::move(xfield)), WeylSymbol(wf));

    double sup = 0.0, peak = 0.0;
    const GridArray<cplx>& a = left_poly.field().samples;
    const GridArray<cplx>& b = left_tw.field().samples;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sup = std::max(sup, std::abs(a[i] - b[i]));
      peak = std::max(peak, std::abs(a[i]));
    }
    push(out, su, "differential and spectral star routes agree", 0, sup / peak, 1e-8);
  }

  // Projector idempotence under the star product (spectral route both sides).
  {
    // the projector symbol integrates to 2 pi hbar, the normalization that
    // makes it a fixed point of its own star square
    WeylSymbol gg = moyal::moyal_star(WeylSymbol(gens[0].symbol), WeylSymbol(gens[0].symbol));
    GridArray<cplx> diff = gg.field().samples;
    GridArray<cplx> ref = gens[0].symbol.samples;
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] -= ref[i];
      diff[i] = std::norm(diff[i]);
      ref[i] = std::norm(ref[i]);
    }
    const double rel = std::sqrt(std::real(quadrature2(xg, pg, diff)) / std::real(quadrature2(xg, pg, ref)));
    push(out, su, "projector is star idempotent", 0, rel, 1e-8);
  }
}

// ----------------------------------------------------------------- cohen ---

struct NamedObservable {
  const char* name;
  PolySymbol sym;
};

std::vector<NamedObservable> quadratic_observables() {
  std::vector<NamedObservable> v;
  v.push_back({"1", PolySymbol::constant(1, cplx(1.0))});
  v.push_back({"x", PolySymbol::monomial_1d(1, 0, cplx(1.0))});
  v.push_back({"p", PolySymbol::monomial_1d(0, 1, cplx(1.0))});
  v.push_back({"x^2", PolySymbol::monomial_1d(2, 0, cplx(1.0))});
  v.push_back({"x p", PolySymbol::monomial_1d(1, 1, cplx(1.0))});
  v.push_back({"p^2", PolySymbol::monomial_1d(0, 2, cplx(1.0))});
  return v;
}

void suite_cohen(std::vector<Check>& out) {
  const std::string su = "cohen";
  const SpatialGrid xg = box512();
  const SpatialGrid pg = momentum_grid(xg, 1.0);

  struct Entry {
    const char* label;
    WaveFunction psi;
  };
  std::vector<Entry> roster;
  roster.push_back({"reference packet", reference_packet(xg)});
  roster.push_back({"displaced packet", displaced_packet(xg)});
  roster.push_back({"two-packet superposition", two_packet_superposition(xg)});
  roster.push_back({"oscillator ground state", states::oscillator_eigenstate(xg, 0)});
  roster.push_back({"oscillator first excited", states::oscillator_eigenstate(xg, 1)});

  const WaveFunction probe = states::coherent(xg, {0.5}, {0.3}, {1.0});
  const WeylSymbol proj = wigner::weyl_symbol(probe, pg);
  const std::vector<NamedObservable> obs = quadratic_observables();

  for (const Entry& e : roster) {
    madelung::MadelungFields fields = madelung::decompose(e.psi, {1e-9});
    bohm::BohmMeasure m = bohm::bohm_measure(fields);
    cohen::CohenKernel km = bohm::kernel_moments(e.psi, fields);
    PhaseSpaceFunction F = wigner::wigner_transform(e.psi, pg);

    double worst = 0.0;
    const char* worst_name = "";
    for (const NamedObservable& o : obs) {
      const double wv = wigner::expectation_weyl(F, WeylSymbol(o.sym, 1.0));
      WeylSymbol mapped = cohen::to_f_symbol(WeylSymbol(o.sym, 1.0), km);
      const double bv = bohm::expectation_bohm(m, mapped.poly());
      const double d = std::abs(wv - bv);
      if (d > worst) {
        worst = d;
        worst_name = o.name;
      }
    }
    push(out, su, std::string("guidance route reproduces phase-space means, ") + e.label, 10, worst,
         1e-6, std::string("worst observable ") + worst_name);

    cohen::CohenKernel ks = bohm::bohm_kernel(e.psi, fields, pg);
    const double pw = wigner::probability_weyl(F, proj.field()).raw;
    const double pb = bohm::probability_bohm(m, proj.field(), ks);
    push(out, su, std::string("projector probability agrees across routes, ") + e.label, 10,
         std::abs(pw - pb), 1e-6, "probe packet outcome " + num(pw));
  }

  // Boundary-width smoothing produces a nonnegative distribution for the
  // most negative state in the roster.
  {
    cohen::CohenKernel kh = cohen::gaussian_kernel(xg, pg, 0.25, 0.25, 1.0, 1e-12);
    PhaseSpaceFunction F1 = wigner::wigner_transform(states::oscillator_eigenstate(xg, 1), pg);
    PhaseSpaceFunction H1 = cohen::to_f_distribution(F1, kh, 0.0);
    const double mn = wigner::min_value(H1);
    push(out, su, "boundary smoothing removes all negativity", 0, std::max(0.0, -mn), 1e-9,
         "min value " + num(mn));

    // Pairing invariance: probabilities are representation independent.
    PhaseSpaceFunction F = wigner::wigner_transform(reference_packet(xg), pg);
    PhaseSpaceFunction Fh = cohen::to_f_distribution(F, kh, 0.5);
    PhaseSpaceFunction Gh = cohen::f_stargenfunction(proj.field(), kh);
    const double pf = cohen::probability_f(Fh, Gh);
    const double pw = wigner::probability_weyl(F, proj.field()).raw;
    push(out, su, "smoothed pairing reproduces the projector probability", 0, std::abs(pf - pw), 1e-8);

    // Quadratic compensation is exact: the mapped symbol x^2 - 2 sx paired
    // with the smoothed distribution returns the original second moment.
    WeylSymbol x2(PolySymbol::monomial_1d(2, 0, cplx(1.0)), 1.0);
    WeylSymbol x2m = cohen::to_f_symbol(x2, kh);
    const double lhs = wigner::expectation_weyl(Fh, x2m);
    const double rhs = wigner::expectation_weyl(F, x2);
    push(out, su, "quadratic symbol compensation is exact", 0, std::abs(lhs - rhs), 1e-8);

    // Forward and inverse symbol maps invert each other (Taylor data).
    WeylSymbol p2(PolySymbol::monomial_1d(0, 2, cplx(1.0)), 1.0);
    WeylSymbol round = cohen::from_f_symbol(cohen::to_f_symbol(p2, kh), kh);
    PolySymbol diff = round.poly();
    diff.add(PolyTerm{{0, 0, 0}, {2, 0, 0}, cplx(-1.0)});
    diff.simplify();
    double resid = 0.0;
    for (const PolyTerm& t : diff.terms()) resid += std::abs(t.coeff);
    push(out, su, "symbol map round trip is the identity", 0, resid, 1e-12);
  }

  // Gridded-symbol round trip through a weak smoothing: no lattice bin is
  // suppressed, so the map must invert exactly.
  {
    cohen::CohenKernel kw = cohen::gaussian_kernel(xg, pg, 5e-4, 5e-4, 1.0);
    WeylSymbol gsym(proj.field());
    WeylSymbol fwd = cohen::to_f_symbol(gsym, kw);
    WeylSymbol back = cohen::from_f_symbol(fwd, kw);
    double sup = 0.0, peak = 0.0;
    const GridArray<cplx>& a = back.field().samples;
    const GridArray<cplx>& b = proj.field().samples;
    for (std::size_t i = 0; i < a.size(); ++i) {
      sup = std::max(sup, std::abs(a[i] - b[i]));
      peak = std::max(peak, std::abs(b[i]));
    }
    push(out, su, "gridded symbol round trip is the identity", 0, sup / peak, 1e-9);
  }

  // The trivial kernel leaves distributions untouched.
  {
    PhaseSpaceFunction F = wigner::wigner_transform(reference_packet(xg), pg);
    PhaseSpaceFunction same = cohen::to_f_distribution(F, cohen::wigner_kernel(1.0));
    double sup = 0.0;
    for (std::size_t i = 0; i < F.samples.size(); ++i)
      sup = std::max(sup, std::abs(F.samples[i] - same.samples[i]));
    push(out, su, "trivial kernel is the identity on distributions", 0, sup, 0.0);
  }
}

// ------------------------------------------------------------------ bohm ---

void suite_bohm(std::vector<Check>& out) {
  const std::string su = "bohm";
  const SpatialGrid xg = box512();
  const SpatialGrid pg = momentum_grid(xg, 1.0);
  const SpatialGrid xig = xg.dual();
  const SpatialGrid etag = pg.dual();
  const int nx = xg.axis(0).count, np = pg.axis(0).count;
  const oracle::CoherentParams c = reference_params();
  const WaveFunction psi = reference_packet(xg);
  madelung::MadelungFields fields = madelung::decompose(psi);

  // Kernel of the reference packet against the closed form, and flatness
  // along xi (the defining property of a momentum-only relabeling).
  {
    cohen::CohenKernel k = bohm::bohm_kernel(psi, fields, pg);
    double sup = 0.0, spread = 0.0;
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < np; ++j) {
        const std::size_t lin = static_cast<std::size_t>(i) * np + j;
        if (k.mask[lin]) continue;
        const double ref = oracle::kernel(c, etag.coord(0, j));
        sup = std::max(sup, std::abs(k.samples[lin] - ref) / ref);
        const std::size_t c0 = static_cast<std::size_t>(nx / 2) * np + j;
        if (!k.mask[c0])
          spread = std::max(spread, std::abs(k.samples[lin] - k.samples[c0]) / std::abs(k.samples[c0]));
      }
    push(out, su, "kernel matches exp(eta^2/8) on valid bins", 1, sup, 1e-6,
         "relative, unit-width packet");
    push(out, su, "kernel is independent of xi", 1, spread, 1e-8, "relative spread per eta row");
  }

  // The guidance measure's characteristic function factorizes through the
  // kernel times the phase-space spectrum, on sampled valid bins.
  {
    auto factorization_gap = [&](const WaveFunction& s) {
      madelung::MadelungFields f = madelung::decompose(s);
      cohen::CohenKernel k = bohm::bohm_kernel(s, f, pg);
      bohm::BohmMeasure m = bohm::bohm_measure(f);
      PhaseSpaceFunction F = wigner::wigner_transform(s, pg);
      GridArray<cplx> D = fourier::char_forward(fourier::concat_axes(xg, pg), F.samples);

      std::vector<std::pair<double, std::size_t>> cand;
      for (int i = 0; i < nx; ++i)
        for (int j = 0; j < np; ++j) {
          const std::size_t lin = static_cast<std::size_t>(i) * np + j;
          if (k.mask[lin]) continue;
          cand.emplace_back(std::abs(xig.coord(0, i)) + std::abs(etag.coord(0, j)), lin);
        }
      std::sort(cand.begin(), cand.end());
      const std::size_t take = std::min<std::size_t>(64, cand.size());
      double worst = 0.0;
      for (std::size_t t = 0; t < take; ++t) {
        const std::size_t lin = cand[t].second;
        const int i = static_cast<int>(lin) / np, j = static_cast<int>(lin) % np;
        const cplx mv = bohm::characteristic_function(m, xig.coord(0, i), etag.coord(0, j));
        worst = std::max(worst, std::abs(mv - k.samples[lin] * D[lin]));
      }
      return worst;
    };
    push(out, su, "measure characteristic factorizes, reference packet", 2, factorization_gap(psi),
         1e-6, "64 lowest-frequency valid bins");
    push(out, su, "measure characteristic factorizes, superposition", 2,
         factorization_gap(two_packet_superposition(xg)), 1e-6, "64 lowest-frequency valid bins");
  }

  // Momentum star-eigenfunction family: closed form, approximate
  // star-eigenvalue residual, and the folded momentum distribution.
  {
    cohen::CohenKernel kt = bohm::bohm_kernel(psi, fields, pg, 1e-8);
    bohm::MomentumStarGen sg = bohm::momentum_stargenfunction(kt, pg, 0.5);
    double sup = 0.0;
    for (int j = 0; j < np; ++j) {
      const double ref = oracle::momentum_stargen(c, pg.coord(0, j), sg.p_star);
      sup = std::max(sup, std::abs(sg.values[static_cast<std::size_t>(j)] - ref));
    }
    push(out, su, "momentum genfunction matches the closed Gaussian", 3, sup, 1e-6,
         "snapped target " + num(sg.p_star));
    push(out, su, "momentum genfunction star residual", 3, bohm::momentum_stargen_residual(sg, kt),
         1e-6, "spectral identity, norm ratio");

    madelung::MadelungFields ftight = madelung::decompose(psi, {1e-12});
    bohm::BohmMeasure mt = bohm::bohm_measure(ftight);
    bohm::MomentumDistribution dist = bohm::momentum_probability(mt, sg);
    PhaseSpaceFunction F = wigner::wigner_transform(psi, pg);
    GridArray<double> mp = wigner::marginal_momentum(F);
    double gap_closed = 0.0, gap_marginal = 0.0;
    for (int j = 0; j < np; ++j) {
      const double pj = pg.coord(0, j);
      gap_closed = std::max(gap_closed,
                            std::abs(dist.folded[static_cast<std::size_t>(j)] - oracle::momentum_probability(c, pj)));
      gap_marginal = std::max(gap_marginal,
                              std::abs(dist.folded[static_cast<std::size_t>(j)] - mp[static_cast<std::size_t>(j)]));
    }
    push(out, su, "folded momentum distribution matches the closed form", 3, gap_closed, 1e-6);
    push(out, su, "folded momentum distribution matches the momentum marginal", 3, gap_marginal, 1e-6);
  }

  // Position distribution is exactly the configuration density.
  {
    struct Entry {
      const char* label;
      WaveFunction psi;
    };
    std::vector<Entry> roster;
    roster.push_back({"reference packet", psi});
    roster.push_back({"displaced packet", displaced_packet(xg)});
    roster.push_back({"two-packet superposition", two_packet_superposition(xg)});
    roster.push_back({"oscillator ground state", states::oscillator_eigenstate(xg, 0)});
    roster.push_back({"oscillator first excited", states::oscillator_eigenstate(xg, 1)});
    for (const Entry& e : roster) {
      madelung::MadelungFields f12 = madelung::decompose(e.psi, {1e-12});
      bohm::BohmMeasure m = bohm::bohm_measure(f12);
      cohen::CohenKernel k = bohm::bohm_kernel(e.psi, f12, pg);
      GridArray<double> P = bohm::position_probability(m, k);
      double sup = 0.0;
      for (int i = 0; i < nx; ++i)
        sup = std::max(sup, std::abs(P[static_cast<std::size_t>(i)] -
                                     std::norm(e.psi.samples[static_cast<std::size_t>(i)])));
      push(out, su, std::string("position distribution equals the density, ") + e.label, 4, sup, 1e-8);
    }
  }

  // Kinetic-symbol shift and the two energy routes.
  {
    madelung::MadelungFields f9 = madelung::decompose(psi, {1e-9});
    cohen::CohenKernel km = bohm::kernel_moments(psi, f9);
    WeylSymbol kin(PolySymbol::monomial_1d(0, 2, cplx(0.5)), 1.0);
    PolySymbol diff = cohen::to_f_symbol(kin, km).poly();
    diff.add(PolyTerm{{0, 0, 0}, {2, 0, 0}, cplx(-0.5)});
    diff.simplify();
    double cval = 0.0, extra = 0.0;
    for (const PolyTerm& t : diff.terms()) {
      const bool constant = t.xpow == std::array<int, 3>{0, 0, 0} && t.ppow == std::array<int, 3>{0, 0, 0};
      if (constant)
        cval = std::real(t.coeff);
      else
        extra += std::abs(t.coeff);
    }
    push(out, su, "kinetic symbol shifts by the mean curvature energy", 5,
         std::max(std::abs(cval - oracle::quantum_potential_mean(c)), extra), 1e-8,
         "shift " + num(cval) + " against 0.125");

    auto energy_gap = [&](const WaveFunction& s) {
      madelung::MadelungFields f = madelung::decompose(s, {1e-9});
      bohm::BohmMeasure m = bohm::bohm_measure(f);
      GridArray<double> v({nx});
      for (int i = 0; i < nx; ++i) {
        const double x = xg.coord(0, i);
        v[static_cast<std::size_t>(i)] = 0.5 * x * x;
      }
      const double eb = bohm::energy_mean(m, v, f);
      const double er = std::real(ops::expectation(s, ops::hamiltonian(v)));
      return std::abs(eb - er);
    };
    push(out, su, "measure energy equals the operator mean, reference packet", 5, energy_gap(psi),
         1e-6, "kinetic + potential + curvature terms");
    push(out, su, "measure energy equals the operator mean, superposition", 5,
         energy_gap(two_packet_superposition(xg)), 1e-6);
  }

  // 3D angular momentum squared along three routes.
  {
    const SpatialGrid g3 = SpatialGrid::centered(3, 8.0, 64);
    WaveFunction psi3 = states::lz_eigenstate_3d(g3);
    madelung::MadelungFields f3 = madelung::decompose(psi3, {1e-9});
    bohm::BohmMeasure m3 = bohm::bohm_measure(f3);
    const ops::Action l2 = ops::angular_momentum_squared();

    GridArray<double> le = bohm::local_expectation(psi3, l2, f3);
    const double v_local = bohm::expectation_local(m3, le);
    push(out, su, "squared angular momentum, local route", 6, std::abs(v_local - 2.0), 1e-4,
         "target 2 hbar^2");

    const double v_direct = std::real(ops::expectation(psi3, l2));
    push(out, su, "local route agrees with the operator quadrature", 6, std::abs(v_local - v_direct),
         1e-6);

    cohen::CohenKernel km3 = bohm::kernel_moments(psi3, f3);
    WeylSymbol mapped = cohen::to_f_symbol(wigner::weyl_symbol_angular_squared(1.0), km3);
    const double v_sym = bohm::expectation_bohm(m3, mapped.poly());
    push(out, su, "squared angular momentum, symbol route", 6, std::abs(v_sym - 2.0), 1e-6,
         "target 2 hbar^2");
  }
}

// -------------------------------------------------------------- dynamics ---

void suite_dynamics(std::vector<Check>& out) {
  const std::string su = "dynamics";
  const SpatialGrid xg = box512();
  const SpatialGrid pg = momentum_grid(xg, 1.0);
  const double width = std::sqrt(0.5);  // shape preserving in the unit well
  const oracle::CoherentParams cw{1.0, 0.5, width, 1.0, 1.0};

  auto state_at = [&](double t) {
    const oracle::WellState s = oracle::harmonic_evolution(cw, 1.0, t);
    return states::coherent(xg, {s.x}, {s.p}, {s.width});
  };

  PolySymbol hsym = PolySymbol::monomial_1d(0, 2, cplx(0.5));
  hsym.add(PolyTerm{{2, 0, 0}, {0, 0, 0}, cplx(0.5)});
  const WeylSymbol hw(hsym, 1.0);
  const dynamics::Potential vh = dynamics::harmonic(xg, 1.0, 1.0);

  // Phase-space evolution residual is second order in the time step.
  {
    auto res = [&](double dt) {
      PhaseSpaceFunction f0 = wigner::wigner_transform(state_at(-dt), pg);
      PhaseSpaceFunction f1 = wigner::wigner_transform(state_at(0.0), pg);
      PhaseSpaceFunction f2 = wigner::wigner_transform(state_at(dt), pg);
      return dynamics::moyal_residual(f0, f1, f2, hw, dt);
    };
    const double r1 = res(0.05), r2 = res(0.025);
    push_window(out, su, "phase-space residual halves like dt^2", 9, r1 / r2, 3.2, 4.8,
                "r(0.05)=" + num(r1) + ", r(0.025)=" + num(r2));
  }

  // Measure transport residual is second order in the time step.
  {
    std::vector<dynamics::TransportSample> samples;
    for (double a : {-1.5, -0.5, 0.5, 1.5})
      for (double b : {-1.5, -0.5, 0.5, 1.5}) samples.push_back({a, b});
    auto res = [&](double dt) {
      return dynamics::transport_residual(state_at(-dt), state_at(0.0), state_at(dt), dt, vh, samples,
                                          {1e-9});
    };
    const double r1 = res(0.02), r2 = res(0.01);
    push_window(out, su, "measure transport residual halves like dt^2", 9, r1 / r2, 3.2, 4.8,
                "r(0.02)=" + num(r1) + ", r(0.01)=" + num(r2));
  }

  // Fixed-measure observable flow against wave propagation over one period.
  {
    const double period = 2.0 * 3.14159265358979323846;
    const int steps = 8192, every = 1024;
    const double dt = period / steps;

    WaveFunction psi0 = state_at(0.0);
    madelung::MadelungFields f0 = madelung::decompose(psi0, {1e-9});
    bohm::BohmMeasure m0 = bohm::bohm_measure(f0);
    cohen::CohenKernel km0 = bohm::kernel_moments(psi0, f0);

    const PolySymbol ax = PolySymbol::monomial_1d(1, 0, cplx(1.0));
    const PolySymbol ap = PolySymbol::monomial_1d(0, 1, cplx(1.0));
    std::vector<PolySymbol> tx = dynamics::evolve_symbol(ax, hsym, km0, dt, steps);
    std::vector<PolySymbol> tp = dynamics::evolve_symbol(ap, hsym, km0, dt, steps);

    dynamics::PropagatorConfig cfg;
    cfg.dt = dt;
    cfg.steps = steps;
    cfg.sample_every = every;
    std::vector<WaveFunction> snaps = dynamics::propagate(psi0, vh, cfg);

    double worst = 0.0;
    if (snaps.size() != static_cast<std::size_t>(steps / every) + 1) {
      push(out, su, "fixed-measure flow matches wave propagation for x and p", 9, 1.0, 1e-6,
           "unexpected snapshot count");
    } else {
      for (std::size_t s = 0; s < snaps.size(); ++s) {
        const std::size_t n = s * static_cast<std::size_t>(every);
        worst = std::max(worst, std::abs(bohm::expectation_bohm(m0, tx[n]) -
                                         dynamics::expectation_schrodinger(snaps[s], ax)));
        worst = std::max(worst, std::abs(bohm::expectation_bohm(m0, tp[n]) -
                                         dynamics::expectation_schrodinger(snaps[s], ap)));
      }
      push(out, su, "fixed-measure flow matches wave propagation for x and p", 9, worst, 1e-6,
           "nine sample times across one period");
    }

    push(out, su, "propagation conserves the norm", 0, std::abs(snaps.back().norm() - 1.0), 1e-12);

    const double ret = std::abs(dynamics::expectation_schrodinger(snaps.back(), ax) -
                                dynamics::expectation_schrodinger(snaps.front(), ax));
    push(out, su, "packet returns after one period", 0, ret, 1e-5, "splitting error only");

    // Transport rate against the five-point derivative of the expectation.
    const dynamics::RateCheck rx = dynamics::expectation_rate_check(ax, psi0, vh, 1e-3, km0, {1e-9});
    push(out, su, "transport rate matches the expectation derivative, A = x", 9,
         std::abs(rx.lhs - rx.rhs), 1e-6, "rate " + num(rx.rhs));
    const dynamics::RateCheck rp = dynamics::expectation_rate_check(ap, psi0, vh, 1e-3, km0, {1e-9});
    push(out, su, "transport rate matches the expectation derivative, A = p", 9,
         std::abs(rp.lhs - rp.rhs), 1e-6, "rate " + num(rp.rhs));
  }
}

using SuiteFn = void (*)(std::vector<Check>&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"wigner", suite_wigner}, {"moyal", suite_moyal},       {"cohen", suite_cohen},
    {"bohm", suite_bohm},     {"dynamics", suite_dynamics},
};

void run_one(const char* name, SuiteFn fn, std::vector<Check>& out) {
  try {
    fn(out);
  } catch (const std::exception& e) {
    Check c;
    c.suite = name;
    c.name = "suite aborted by exception";
    c.criterion = 0;
    c.pass = false;
    c.value = std::nan("");
    c.bound = 0.0;
    c.detail = e.what();
    out.push_back(std::move(c));
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> v;
  for (const SuiteEntry& s : kSuites) v.emplace_back(s.name);
  return v;
}

std::vector<Check> run_suite(const std::string& name) {
  std::vector<Check> out;
  if (name == "all") {
    for (const SuiteEntry& s : kSuites) run_one(s.name, s.fn, out);
    return out;
  }
  for (const SuiteEntry& s : kSuites)
    if (name == s.name) {
      run_one(s.name, s.fn, out);
      return out;
    }
  throw std::invalid_argument("unknown suite: " + name);
}

std::string format_check(const Check& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "[%s] %-8s %-58s value=%-12.5g bound=%-10.5g %s",
                c.pass ? "PASS" : "FAIL", c.suite.c_str(), c.name.c_str(), c.value, c.bound,
                c.detail.c_str());
  return buf;
}

}  // namespace psbohm::verify
