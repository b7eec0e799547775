#include "psbohm/wigner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "psbohm/fourier.hpp"

namespace psbohm::wigner {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

PhaseSpaceFunction wigner_transform(const WaveFunction& psi, const SpatialGrid& pgrid) {
  const int d = psi.dims();
  if (pgrid.dims() != d) throw std::invalid_argument("wigner_transform: pgrid dims mismatch");
  if (!pgrid.is_zero_centered())
    throw std::invalid_argument("wigner_transform: pgrid must be zero-centered");
  const double hbar = psi.hbar;

  // Conjugate separation axes: du = 2 pi hbar / (n dp), zero-centered.
  std::vector<SpatialGrid::Axis> uaxes;
  for (int a = 0; a < d; ++a) {
    const int n = pgrid.axis(a).count;
    const double du = kTwoPi * hbar / (n * pgrid.axis(a).step);
    if (0.5 * hbar * std::numbers::pi / pgrid.axis(a).step > 0.5 * psi.grid.span(a) + 1e-12)
      throw std::invalid_argument(
          "wigner_transform: half-shift range exceeds half the position span; widen the box or "
          "coarsen pgrid");
    uaxes.push_back(SpatialGrid::Axis{-(n / 2) * du, du, n});
  }

  std::vector<int> shape;
  for (int a = 0; a < d; ++a) shape.push_back(psi.grid.axis(a).count);
  for (int a = 0; a < d; ++a) shape.push_back(uaxes[static_cast<size_t>(a)].count);
  GridArray<cplx> B(shape);

  const std::size_t nx = psi.grid.total_points();
  std::size_t nu = 1;
  for (int a = 0; a < d; ++a) nu *= static_cast<std::size_t>(uaxes[static_cast<size_t>(a)].count);

  std::vector<int> uidx(static_cast<size_t>(d), 0);
  std::vector<double> off(static_cast<size_t>(d));
  for (std::size_t uj = 0; uj < nu; ++uj) {
    for (int a = 0; a < d; ++a) {
      const auto& ax = uaxes[static_cast<size_t>(a)];
      off[static_cast<size_t>(a)] = 0.5 * (ax.min + uidx[static_cast<size_t>(a)] * ax.step);
    }
    std::vector<double> moff(off);
    for (double& v : moff) v = -v;
    GridArray<cplx> plus = fourier::shift_sample(psi.grid, psi.samples, off);
    GridArray<cplx> minus = fourier::shift_sample(psi.grid, psi.samples, moff);
    for (std::size_t xi = 0; xi < nx; ++xi)
      B[xi * nu + uj] = std::conj(minus[xi]) * plus[xi];
    for (int a = d - 1; a >= 0; --a) {
      if (++uidx[static_cast<size_t>(a)] < uaxes[static_cast<size_t>(a)].count) break;
      uidx[static_cast<size_t>(a)] = 0;
    }
  }

  for (int a = 0; a < d; ++a) {
    const double du = uaxes[static_cast<size_t>(a)].step;
    fourier::axis_to_dual(B, d + a, uaxes[static_cast<size_t>(a)], -1, du / (kTwoPi * hbar));
  }

  double max_abs = 0.0, max_imag = 0.0;
  for (const cplx& v : B) {
    max_abs = std::max(max_abs, std::abs(v));
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  if (max_abs > 0.0 && max_imag > 1e-12 * max_abs)
    throw std::runtime_error("wigner_transform: imaginary residue above 1e-12 of peak");
  for (cplx& v : B) v = cplx(v.real(), 0.0);

  PhaseSpaceFunction F;
  F.xgrid = psi.grid;
  F.pgrid = pgrid;
  F.samples = std::move(B);
  F.hbar = hbar;

  const double mass = std::real(quadrature2(F.xgrid, F.pgrid, F.samples));
  const double n2 = psi.norm() * psi.norm();
  if (std::abs(mass - n2) > 1e-8)
    throw std::runtime_error("wigner_transform: total mass deviates from the state norm");
  return F;
}

WeylSymbol weyl_symbol(const SpatialGrid& xg, const GridArray<double>& v, double hbar) {
  if (v.size() != xg.total_points()) throw std::invalid_argument("weyl_symbol: size mismatch");
  PolySymbol s(xg.dims());
  GridTerm t;
  t.coeff = GridArray<cplx>(std::vector<int>(v.shape()));
  for (std::size_t i = 0; i < v.size(); ++i) t.coeff[i] = v[i];
  s.add_grid(xg, std::move(t));
  return WeylSymbol(std::move(s), hbar);
}

WeylSymbol weyl_symbol(const PolySymbol& a, double hbar) {
  if (a.p_degree() > 2)
    throw std::invalid_argument("weyl_symbol: momentum degree above 2 is not supported");
  return WeylSymbol(a, hbar);
}

WeylSymbol weyl_symbol_angular(int axis, double hbar) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("weyl_symbol_angular: bad axis");
  const int a = (axis + 1) % 3, b = (axis + 2) % 3;
  PolySymbol s(3);
  std::array<int, 3> xp{0, 0, 0}, pp{0, 0, 0};
  xp[static_cast<size_t>(a)] = 1;
  pp[static_cast<size_t>(b)] = 1;
  s.add(PolyTerm{xp, pp, 1.0});
  xp = {0, 0, 0};
  pp = {0, 0, 0};
  xp[static_cast<size_t>(b)] = 1;
  pp[static_cast<size_t>(a)] = 1;
  s.add(PolyTerm{xp, pp, -1.0});
  return WeylSymbol(std::move(s), hbar);
}

WeylSymbol weyl_symbol_angular_squared(double hbar) {
  // (x cross p)^2 = r^2 p^2 - (x.p)^2; the operator's Weyl symbol carries the
  // ordering constant -(3/2) hbar^2.
  PolySymbol s(3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      if (j == k) continue;
      std::array<int, 3> xp{0, 0, 0}, pp{0, 0, 0};
      xp[static_cast<size_t>(j)] = 2;
      pp[static_cast<size_t>(k)] = 2;
      s.add(PolyTerm{xp, pp, 1.0});
      xp = {0, 0, 0};
      pp = {0, 0, 0};
      xp[static_cast<size_t>(j)] = 1;
      xp[static_cast<size_t>(k)] = 1;
      pp[static_cast<size_t>(j)] = 1;
      pp[static_cast<size_t>(k)] = 1;
      s.add(PolyTerm{xp, pp, -1.0});
    }
  s.add(PolyTerm{{0, 0, 0}, {0, 0, 0}, -1.5 * hbar * hbar});
  s.simplify();
  return WeylSymbol(std::move(s), hbar);
}

WeylSymbol weyl_symbol(const WaveFunction& phi, const SpatialGrid& pgrid) {
  PhaseSpaceFunction G = wigner_transform(phi, pgrid);
  const double scale = std::pow(kTwoPi * phi.hbar, phi.dims());
  for (cplx& v : G.samples) v *= scale;
  return WeylSymbol(std::move(G));
}

double expectation_weyl(const PhaseSpaceFunction& F, const WeylSymbol& A) {
  GridArray<cplx> prod;
  if (A.is_poly()) {
    prod = A.poly().sample(F.xgrid, F.pgrid);
  } else {
    const PhaseSpaceFunction& g = A.field();
    if (g.xgrid != F.xgrid || g.pgrid != F.pgrid)
      throw std::invalid_argument("expectation_weyl: grid mismatch");
    prod = g.samples;
  }
  if (prod.size() != F.samples.size()) throw std::invalid_argument("expectation_weyl: size mismatch");
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= F.samples[i];
  return std::real(quadrature2(F.xgrid, F.pgrid, prod));
}

ProbabilityResult probability_weyl(const PhaseSpaceFunction& F, const PhaseSpaceFunction& G) {
  if (G.xgrid != F.xgrid || G.pgrid != F.pgrid)
    throw std::invalid_argument("probability_weyl: grid mismatch");
  GridArray<cplx> prod = F.samples;
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= G.samples[i];
  ProbabilityResult r;
  r.raw = std::real(quadrature2(F.xgrid, F.pgrid, prod));
  r.value = std::min(1.0, std::max(0.0, r.raw));
  return r;
}

GridArray<double> marginal_position(const PhaseSpaceFunction& F) {
  const std::size_t nx = F.xgrid.total_points();
  const std::size_t np = F.pgrid.total_points();
  std::vector<int> shape;
  for (int a = 0; a < F.xgrid.dims(); ++a) shape.push_back(F.xgrid.axis(a).count);
  GridArray<double> out(shape);
  const double dvp = F.pgrid.volume_element();
  for (std::size_t i = 0; i < nx; ++i) {
    double acc = 0.0;
    const cplx* row = F.samples.data() + i * np;
    for (std::size_t j = 0; j < np; ++j) acc += row[j].real();
    out[i] = acc * dvp;
  }
  return out;
}

GridArray<double> marginal_momentum(const PhaseSpaceFunction& F) {
  const std::size_t nx = F.xgrid.total_points();
  const std::size_t np = F.pgrid.total_points();
  std::vector<int> shape;
  for (int a = 0; a < F.pgrid.dims(); ++a) shape.push_back(F.pgrid.axis(a).count);
  GridArray<double> out(shape);
  const double dvx = F.xgrid.volume_element();
  for (std::size_t i = 0; i < nx; ++i) {
    const cplx* row = F.samples.data() + i * np;
    for (std::size_t j = 0; j < np; ++j) out[j] += row[j].real() * dvx;
  }
  return out;
}

double min_value(const PhaseSpaceFunction& F) {
  double m = 0.0;
  bool first = true;
  for (const cplx& v : F.samples) {
    if (first || v.real() < m) m = v.real();
    first = false;
  }
  return m;
}

}  // namespace psbohm::wigner
