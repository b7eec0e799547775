#include "psbohm/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "psbohm/fourier.hpp"

namespace psbohm::dynamics {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> grid_shape(const SpatialGrid& g) {
  std::vector<int> s(static_cast<size_t>(g.dims()));
  for (int d = 0; d < g.dims(); ++d) s[static_cast<size_t>(d)] = g.axis(d).count;
  return s;
}

PolySymbol lincomb(const PolySymbol& base, const PolySymbol& dir, double h) {
  PolySymbol out = dir;
  out.scale(h);
  out.add_symbol(base);
  out.simplify();
  return out;
}

}  // namespace

Potential free_particle(const SpatialGrid& g) {
  Potential v;
  v.grid = g;
  v.values = GridArray<double>(grid_shape(g));
  v.gradient.assign(static_cast<size_t>(g.dims()), GridArray<double>(grid_shape(g)));
  v.poly = PolySymbol(g.dims());
  v.has_poly = true;
  return v;
}

Potential harmonic(const SpatialGrid& g, double mass, double omega,
                   const std::vector<double>& center) {
  if (!center.empty() && static_cast<int>(center.size()) != g.dims())
    throw std::invalid_argument("harmonic: center dimension mismatch");
  Potential v;
  v.grid = g;
  v.values = GridArray<double>(grid_shape(g));
  v.gradient.assign(static_cast<size_t>(g.dims()), GridArray<double>(grid_shape(g)));
  const double k = mass * omega * omega;
  v.poly = PolySymbol(g.dims());
  for (int d = 0; d < g.dims(); ++d) {
    const double c = center.empty() ? 0.0 : center[static_cast<size_t>(d)];
    std::array<int, 3> x2{}, x1{};
    x2[static_cast<size_t>(d)] = 2;
    x1[static_cast<size_t>(d)] = 1;
    v.poly.add(PolyTerm{x2, {0, 0, 0}, cplx(0.5 * k)});
    if (c != 0.0) {
      v.poly.add(PolyTerm{x1, {0, 0, 0}, cplx(-k * c)});
      v.poly.add(PolyTerm{{0, 0, 0}, {0, 0, 0}, cplx(0.5 * k * c * c)});
    }
  }
  v.poly.simplify();
  v.has_poly = true;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const std::vector<int> idx = v.values.unravel(i);
    double acc = 0.0;
    for (int d = 0; d < g.dims(); ++d) {
      const double c = center.empty() ? 0.0 : center[static_cast<size_t>(d)];
      const double r = g.coord(d, idx[static_cast<size_t>(d)]) - c;
      acc += 0.5 * k * r * r;
      v.gradient[static_cast<size_t>(d)][i] = k * r;
    }
    v.values[i] = acc;
  }
  return v;
}

Potential potential_from_poly(const SpatialGrid& g, const PolySymbol& v_poly) {
  if (v_poly.p_degree() != 0)
    throw std::invalid_argument("potential_from_poly: potentials are momentum-independent");
  if (v_poly.dims() != g.dims()) throw std::invalid_argument("potential_from_poly: dims mismatch");
  Potential v;
  v.grid = g;
  v.poly = v_poly;
  v.has_poly = true;
  v.values = GridArray<double>(grid_shape(g));
  v.gradient.assign(static_cast<size_t>(g.dims()), GridArray<double>(grid_shape(g)));
  std::vector<PolySymbol> dv;
  for (int d = 0; d < g.dims(); ++d) dv.push_back(v_poly.derivative_x(d));
  const double pzero[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const std::vector<int> idx = v.values.unravel(i);
    double x[3] = {0.0, 0.0, 0.0};
    for (int d = 0; d < g.dims(); ++d) x[d] = g.coord(d, idx[static_cast<size_t>(d)]);
    v.values[i] = std::real(v_poly.evaluate(x, pzero));
    for (int d = 0; d < g.dims(); ++d)
      v.gradient[static_cast<size_t>(d)][i] = std::real(dv[static_cast<size_t>(d)].evaluate(x, pzero));
  }
  return v;
}

std::vector<WaveFunction> propagate(const WaveFunction& psi, const Potential& V,
                                    const PropagatorConfig& cfg) {
  if (psi.grid != V.grid) throw std::invalid_argument("propagate: potential grid mismatch");
  if (cfg.steps < 1) throw std::invalid_argument("propagate: steps must be positive");
  if (cfg.dt == 0.0) throw std::invalid_argument("propagate: dt must be nonzero");

  double kin_phase = 0.0;
  for (int d = 0; d < psi.dims(); ++d) {
    const double kmax = kPi / psi.grid.axis(d).step;
    kin_phase += std::abs(cfg.dt) * psi.hbar * kmax * kmax / (2.0 * psi.mass);
  }
  if (kin_phase >= kPi)
    throw std::invalid_argument(
        "propagate: kinetic phase per step reaches pi; reduce dt or refine the grid");

  const std::size_t n = psi.samples.size();
  std::vector<cplx> half_v(n), kin(n);
  for (std::size_t i = 0; i < n; ++i)
    half_v[i] = std::exp(cplx(0.0, -0.5 * cfg.dt * V.values[i] / psi.hbar));

  const SpatialGrid dual = psi.grid.dual();
  GridArray<cplx> tmp(psi.samples.shape());
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<int> idx = tmp.unravel(i);
    double k2 = 0.0;
    for (int d = 0; d < psi.dims(); ++d) {
      const double kd = dual.coord(d, idx[static_cast<size_t>(d)]);
      k2 += kd * kd;
    }
    kin[i] = std::exp(cplx(0.0, -cfg.dt * psi.hbar * k2 / (2.0 * psi.mass)));
  }

  std::vector<WaveFunction> snaps;
  snaps.push_back(psi);
  WaveFunction cur = psi;
  for (int s = 1; s <= cfg.steps; ++s) {
    for (std::size_t i = 0; i < n; ++i) cur.samples[i] *= half_v[i];
    GridArray<cplx> freq = fourier::to_frequency(cur.grid, cur.samples);
    for (std::size_t i = 0; i < n; ++i) freq[i] *= kin[i];
    cur.samples = fourier::from_frequency(cur.grid, freq);
    for (std::size_t i = 0; i < n; ++i) cur.samples[i] *= half_v[i];

    if (!cur.support_ok(cfg.support_threshold))
      throw std::runtime_error("propagate: support reached the box boundary at step " +
                               std::to_string(s));
    if (s == cfg.steps || (cfg.sample_every > 0 && s % cfg.sample_every == 0))
      snaps.push_back(cur);
  }
  return snaps;
}

double moyal_residual(const PhaseSpaceFunction& F0, const PhaseSpaceFunction& F1,
                      const PhaseSpaceFunction& F2, const WeylSymbol& H, double dt) {
  if (F0.samples.size() != F1.samples.size() || F1.samples.size() != F2.samples.size())
    throw std::invalid_argument("moyal_residual: snapshot size mismatch");
  WeylSymbol bracket = moyal::moyal_bracket(H, WeylSymbol(F1));
  const GridArray<cplx>& b = bracket.field().samples;
  const cplx ih(0.0, F1.hbar);
  GridArray<double> mag(F1.samples.shape());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const cplx r = (F2.samples[i] - F0.samples[i]) / (2.0 * dt) - b[i] / ih;
    mag[i] = std::norm(r);
  }
  return std::sqrt(quadrature2(F1.xgrid, F1.pgrid, mag));
}

double transport_residual(const WaveFunction& before, const WaveFunction& middle,
                          const WaveFunction& after, double dt, const Potential& V,
                          const std::vector<TransportSample>& samples,
                          const madelung::MadelungOptions& opt) {
  if (middle.dims() != 1) throw std::invalid_argument("transport_residual: 1D states only");
  if (before.grid != middle.grid || after.grid != middle.grid || V.grid != middle.grid)
    throw std::invalid_argument("transport_residual: grid mismatch");
  if (samples.empty()) throw std::invalid_argument("transport_residual: no sample points");

  madelung::MadelungFields fields = madelung::decompose(middle, opt);
  GridArray<double> qgrad = madelung::quantum_potential_gradient_1d(middle, fields);

  const WaveFunction* snaps[3] = {&before, &middle, &after};
  const std::size_t n = middle.samples.size();
  std::vector<std::vector<double>> dens(3, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> mom(3, std::vector<double>(n, 0.0));
  for (int s = 0; s < 3; ++s) {
    GridArray<cplx> dpsi = fourier::derivative(middle.grid, snaps[s]->samples, 0, 1);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx v = snaps[s]->samples[j];
      const double d = std::norm(v);
      dens[static_cast<size_t>(s)][j] = d;
      if (d > 0.0)
        mom[static_cast<size_t>(s)][j] = middle.hbar * std::imag(std::conj(v) * dpsi[j]) / d;
    }
  }

  const double dx = middle.grid.axis(0).step;
  double worst = 0.0;
  for (const TransportSample& sm : samples) {
    cplx m_char[3] = {cplx(0.0), cplx(0.0), cplx(0.0)};
    cplx rhs(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (fields.masked(j)) continue;
      const double xj = middle.grid.coord(0, static_cast<int>(j));
      for (int s = 0; s < 3; ++s) {
        const double w = dens[static_cast<size_t>(s)][j] * dx;
        if (w <= 0.0) continue;
        m_char[s] += w * std::exp(cplx(0.0, sm.xi * xj + sm.eta * mom[static_cast<size_t>(s)][j]));
      }
      const double w1 = dens[1][j] * dx;
      const double p1 = mom[1][j];
      const cplx e1 = std::exp(cplx(0.0, sm.xi * xj + sm.eta * p1));
      const cplx factor(0.0, sm.xi * p1 / middle.mass -
                                 sm.eta * (V.gradient[0][j] + qgrad[j]));
      rhs += w1 * factor * e1;
    }
    const cplx lhs = (m_char[2] - m_char[0]) / (2.0 * dt);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<PolySymbol> evolve_symbol(const PolySymbol& A_weyl, const PolySymbol& H_weyl,
                                      const cohen::CohenKernel& k, double dt, int steps) {
  if (steps < 0) throw std::invalid_argument("evolve_symbol: negative step count");
  auto rate = [&](const PolySymbol& af) {
    PolySymbol aw = cohen::from_f_symbol(WeylSymbol(af, k.hbar), k).poly();
    PolySymbol pb = poisson_bracket(aw, H_weyl);
    return cohen::to_f_symbol(WeylSymbol(pb, k.hbar), k).poly();
  };

  std::vector<PolySymbol> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  PolySymbol a = cohen::to_f_symbol(WeylSymbol(A_weyl, k.hbar), k).poly();
  out.push_back(a);
  for (int s = 0; s < steps; ++s) {
    PolySymbol k1 = rate(a);
    PolySymbol k2 = rate(lincomb(a, k1, 0.5 * dt));
    PolySymbol k3 = rate(lincomb(a, k2, 0.5 * dt));
    PolySymbol k4 = rate(lincomb(a, k3, dt));
    PolySymbol incr = k1;
    incr.add_symbol(k4);
    k2.scale(2.0);
    k3.scale(2.0);
    incr.add_symbol(k2);
    incr.add_symbol(k3);
    incr.scale(dt / 6.0);
    a.add_symbol(incr);
    a.simplify();
    out.push_back(a);
  }
  return out;
}

RateCheck expectation_rate_check(const PolySymbol& A_weyl, const WaveFunction& psi,
                                 const Potential& V, double dt, const cohen::CohenKernel& k,
                                 const madelung::MadelungOptions& opt) {
  if (psi.dims() != 1) throw std::invalid_argument("expectation_rate_check: 1D states only");
  if (!V.has_poly)
    throw std::invalid_argument("expectation_rate_check: potential needs a polynomial symbol");

  auto value_at = [&](double offset) {
    if (offset == 0.0) return expectation_schrodinger(psi, A_weyl);
    PropagatorConfig cfg;
    cfg.steps = 8;
    cfg.dt = offset / cfg.steps;
    return expectation_schrodinger(propagate(psi, V, cfg).back(), A_weyl);
  };
  const double f_m2 = value_at(-2.0 * dt);
  const double f_m1 = value_at(-dt);
  const double f_p1 = value_at(dt);
  const double f_p2 = value_at(2.0 * dt);

  RateCheck rc;
  rc.lhs = (-f_p2 + 8.0 * f_p1 - 8.0 * f_m1 + f_m2) / (12.0 * dt);

  madelung::MadelungFields fields = madelung::decompose(psi, opt);
  bohm::BohmMeasure m = bohm::bohm_measure(fields);
  GridArray<double> qgrad = madelung::quantum_potential_gradient_1d(psi, fields);

  PolySymbol h = V.poly;
  h.add(PolyTerm{{0, 0, 0}, {2, 0, 0}, cplx(0.5 / psi.mass)});
  PolySymbol at = cohen::to_f_symbol(WeylSymbol(A_weyl, k.hbar), k).poly();
  PolySymbol pb = poisson_bracket(at, h);
  PolySymbol dpa = at.derivative_p(0);

  double acc = 0.0;
  for (const bohm::MeasurePoint& pt : m.points) {
    const cplx b = pb.evaluate(pt.x, pt.momentum);
    const cplx d = dpa.evaluate(pt.x, pt.momentum);
    acc += pt.weight * (std::real(b) - std::real(d) * qgrad[pt.node]);
  }
  rc.rhs = acc;
  return rc;
}

double expectation_schrodinger(const WaveFunction& psi, const PolySymbol& A_weyl) {
  if (psi.dims() != 1) throw std::invalid_argument("expectation_schrodinger: 1D states only");
  if (A_weyl.has_grid_terms())
    throw std::invalid_argument("expectation_schrodinger: polynomial symbols only");
  if (A_weyl.p_degree() > 2)
    throw std::invalid_argument("expectation_schrodinger: momentum degree above 2 unsupported");

  const std::size_t n = psi.samples.size();
  const double dx = psi.grid.axis(0).step;
  GridArray<cplx> d1 = fourier::derivative(psi.grid, psi.samples, 0, 1);
  GridArray<cplx> d2 = fourier::derivative(psi.grid, psi.samples, 0, 2);
  const cplx mih(0.0, -psi.hbar);

  cplx acc(0.0, 0.0);
  for (const PolyTerm& t : A_weyl.terms()) {
    const int a = t.xpow[0];
    const int b = t.ppow[0];
    double val = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double xj = psi.grid.coord(0, static_cast<int>(j));
      const double xa = std::pow(xj, a);
      const cplx pv = psi.samples[j];
      if (b == 0) {
        val += xa * std::norm(pv);
      } else if (b == 1) {
        val += xa * std::real(std::conj(pv) * (mih * d1[j]));
      } else {
        const cplx ppsi = mih * d1[j];
        const cplx p2psi = -psi.hbar * psi.hbar * d2[j];
        val += 0.5 * xa * (std::real(std::conj(pv) * p2psi) + std::norm(ppsi));
      }
    }
    acc += t.coeff * (val * dx);
  }
  return std::real(acc);
}

}  // namespace psbohm::dynamics
