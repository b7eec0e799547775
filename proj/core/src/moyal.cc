#include "psbohm/moyal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "psbohm/fourier.hpp"
#include "psbohm/wigner.hpp"

namespace psbohm::moyal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxSeriesDepth = 32;

PolySymbol star_poly_poly(const PolySymbol& A, const PolySymbol& B, double hbar) {
  PolySymbol out(A.dims());
  std::vector<std::pair<PolySymbol, PolySymbol>> cur{{A, B}};
  cplx pref = 1.0;
  for (int n = 0; !cur.empty(); ++n) {
    if (n > kMaxSeriesDepth) throw std::runtime_error("moyal_star: series did not terminate");
    for (const auto& [a, b] : cur) {
      PolySymbol t = a.times(b);
      t.scale(pref);
      out.add_symbol(t);
    }
    std::vector<std::pair<PolySymbol, PolySymbol>> next;
    for (const auto& [a, b] : cur)
      for (int d = 0; d < A.dims(); ++d) {
        PolySymbol ax = a.derivative_x(d), bp = b.derivative_p(d);
        if (!ax.zero() && !bp.zero()) next.emplace_back(std::move(ax), std::move(bp));
        PolySymbol ap = a.derivative_p(d), bx = b.derivative_x(d);
        if (!ap.zero() && !bx.zero()) {
          ap.scale(-1.0);
          next.emplace_back(std::move(ap), std::move(bx));
        }
      }
    cur.swap(next);
    pref *= cplx(0.0, 0.5 * hbar) / static_cast<double>(n + 1);
  }
  out.simplify();
  return out;
}

GridArray<cplx> grid_dx(const PhaseSpaceFunction& G, const GridArray<cplx>& a, int axis) {
  return fourier::derivative_along(G.xgrid.axis(axis), a, axis, 1);
}

GridArray<cplx> grid_dp(const PhaseSpaceFunction& G, const GridArray<cplx>& a, int axis) {
  return fourier::derivative_along(G.pgrid.axis(axis), a, G.dims() + axis, 1);
}

// Bidifferential series with the polynomial on one side; poly_left says
// whether it is the left factor. The polynomial's finite degrees bound the
// depth: each level pairs a polynomial derivative with a grid derivative.
PhaseSpaceFunction star_poly_grid(const PolySymbol& P, const PhaseSpaceFunction& G, double hbar,
                                  bool poly_left) {
  struct Pair {
    PolySymbol s;
    GridArray<cplx> g;
  };
  PhaseSpaceFunction out = make_phase_function(G.xgrid, G.pgrid, hbar);
  std::vector<Pair> cur;
  cur.push_back(Pair{P, G.samples});
  cplx pref = 1.0;
  for (int n = 0; !cur.empty(); ++n) {
    if (n > kMaxSeriesDepth) throw std::runtime_error("moyal_star: series did not terminate");
    for (const auto& pr : cur) {
      GridArray<cplx> sampled = pr.s.sample(G.xgrid, G.pgrid);
      for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] += pref * sampled[i] * pr.g[i];
    }
    std::vector<Pair> next;
    for (const auto& pr : cur)
      for (int d = 0; d < G.dims(); ++d) {
        if (poly_left) {
          PolySymbol sx = pr.s.derivative_x(d);
          if (!sx.zero()) next.push_back(Pair{std::move(sx), grid_dp(G, pr.g, d)});
          PolySymbol sp = pr.s.derivative_p(d);
          if (!sp.zero()) {
            sp.scale(-1.0);
            next.push_back(Pair{std::move(sp), grid_dx(G, pr.g, d)});
          }
        } else {
          PolySymbol sp = pr.s.derivative_p(d);
          if (!sp.zero()) next.push_back(Pair{std::move(sp), grid_dx(G, pr.g, d)});
          PolySymbol sx = pr.s.derivative_x(d);
          if (!sx.zero()) {
            sx.scale(-1.0);
            next.push_back(Pair{std::move(sx), grid_dp(G, pr.g, d)});
          }
        }
      }
    cur.swap(next);
    pref *= cplx(0.0, 0.5 * hbar) / static_cast<double>(n + 1);
  }
  return out;
}

PhaseSpaceFunction star_grid_grid(const PhaseSpaceFunction& A, const PhaseSpaceFunction& B,
                                  double hbar) {
  if (A.xgrid != B.xgrid || A.pgrid != B.pgrid)
    throw std::invalid_argument("moyal_star: grid mismatch");
  if (A.dims() != 1)
    throw std::invalid_argument("moyal_star: gridded*gridded is supported in 1D phase space only");

  auto axes = fourier::concat_axes(A.xgrid, A.pgrid);
  GridArray<cplx> Ah = fourier::char_forward(axes, A.samples);
  GridArray<cplx> Bh = fourier::char_forward(axes, B.samples);
  const int Nx = A.xgrid.axis(0).count, Np = A.pgrid.axis(0).count;
  const double dxi = kTwoPi / A.xgrid.span(0), deta = kTwoPi / A.pgrid.span(0);

  auto xi_at = [&](int m) { return (m - Nx / 2) * dxi; };
  auto eta_at = [&](int n) { return (n - Np / 2) * deta; };

  // Separable halves of exp(-(i hbar/2)(xi1 eta - eta1 xi)).
  GridArray<cplx> ph1(std::vector<int>{Nx, Np});  // [m1][n]: e^{-(i hbar/2) xi_{m1} eta_n}
  GridArray<cplx> ph2(std::vector<int>{Np, Nx});  // [n1][m]: e^{+(i hbar/2) eta_{n1} xi_m}
  for (int m1 = 0; m1 < Nx; ++m1)
    for (int n = 0; n < Np; ++n)
      ph1[static_cast<size_t>(m1 * Np + n)] = std::polar(1.0, -0.5 * hbar * xi_at(m1) * eta_at(n));
  for (int n1 = 0; n1 < Np; ++n1)
    for (int m = 0; m < Nx; ++m)
      ph2[static_cast<size_t>(n1 * Nx + m)] = std::polar(1.0, 0.5 * hbar * eta_at(n1) * xi_at(m));

  double amax = 0.0;
  for (const cplx& v : Ah) amax = std::max(amax, std::abs(v));
  const double cutoff = 1e-18 * amax;

  GridArray<cplx> Ch(std::vector<int>{Nx, Np});
  const double scale = dxi * deta / (kTwoPi * kTwoPi);
  for (int m1 = 0; m1 < Nx; ++m1) {
    for (int n1 = 0; n1 < Np; ++n1) {
      const cplx a = Ah[static_cast<size_t>(m1 * Np + n1)];
      if (std::abs(a) < cutoff) continue;
      const int mlo = std::max(0, m1 - Nx / 2), mhi = std::min(Nx, m1 + Nx / 2);
      const int nlo = std::max(0, n1 - Np / 2), nhi = std::min(Np, n1 + Np / 2);
      for (int m = mlo; m < mhi; ++m) {
        const int q = m - m1 + Nx / 2;
        const cplx aph2 = a * ph2[static_cast<size_t>(n1 * Nx + m)];
        const cplx* brow = Bh.data() + static_cast<size_t>(q) * static_cast<size_t>(Np);
        const cplx* p1row = ph1.data() + static_cast<size_t>(m1) * static_cast<size_t>(Np);
        cplx* crow = Ch.data() + static_cast<size_t>(m) * static_cast<size_t>(Np);
        for (int n = nlo; n < nhi; ++n) {
          const int r = n - n1 + Np / 2;
          crow[n] += aph2 * p1row[n] * brow[r];
        }
      }
    }
  }
  for (cplx& v : Ch) v *= scale;

  PhaseSpaceFunction out = make_phase_function(A.xgrid, A.pgrid, hbar);
  out.samples = fourier::char_inverse(axes, Ch);
  return out;
}

}  // namespace

WeylSymbol moyal_star(const WeylSymbol& A, const WeylSymbol& B) {
  if (A.hbar() != B.hbar()) throw std::invalid_argument("moyal_star: hbar mismatch");
  const double hbar = A.hbar();

  if (A.is_poly() && B.is_poly()) {
    const PolySymbol& a = A.poly();
    const PolySymbol& b = B.poly();
    if (a.p_degree() + b.p_degree() > 4)
      throw std::invalid_argument(
          "moyal_star: combined momentum degree above 4 for polynomial operands");
    return WeylSymbol(star_poly_poly(a, b, hbar), hbar);
  }

  if (A.is_poly() && !B.is_poly()) {
    const PhaseSpaceFunction& g = B.field();
    if (A.poly().has_grid_terms()) {
      PhaseSpaceFunction ag = make_phase_function(g.xgrid, g.pgrid, hbar);
      ag.samples = A.poly().sample(g.xgrid, g.pgrid);
      return WeylSymbol(star_grid_grid(ag, g, hbar));
    }
    return WeylSymbol(star_poly_grid(A.poly(), g, hbar, /*poly_left=*/true));
  }
  if (!A.is_poly() && B.is_poly()) {
    const PhaseSpaceFunction& g = A.field();
    if (B.poly().has_grid_terms()) {
      PhaseSpaceFunction bg = make_phase_function(g.xgrid, g.pgrid, hbar);
      bg.samples = B.poly().sample(g.xgrid, g.pgrid);
      return WeylSymbol(star_grid_grid(g, bg, hbar));
    }
    return WeylSymbol(star_poly_grid(B.poly(), g, hbar, /*poly_left=*/false));
  }
  return WeylSymbol(star_grid_grid(A.field(), B.field(), hbar));
}

WeylSymbol moyal_bracket(const WeylSymbol& A, const WeylSymbol& B) {
  WeylSymbol ab = moyal_star(A, B);
  WeylSymbol ba = moyal_star(B, A);
  if (ab.is_poly()) {
    PolySymbol out = ab.poly();
    PolySymbol neg = ba.poly();
    neg.scale(-1.0);
    out.add_symbol(neg);
    out.simplify();
    return WeylSymbol(std::move(out), A.hbar());
  }
  PhaseSpaceFunction out = ab.field();
  const PhaseSpaceFunction& o = ba.field();
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] -= o.samples[i];
  return WeylSymbol(std::move(out));
}

double stargen_residual(const WeylSymbol& A, const PhaseSpaceFunction& G, double eigenvalue) {
  WeylSymbol prod = moyal_star(A, WeylSymbol(G));
  const PhaseSpaceFunction& pg = prod.field();
  GridArray<cplx> res = pg.samples;
  for (std::size_t i = 0; i < res.size(); ++i) res[i] -= eigenvalue * G.samples[i];
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    num += std::norm(res[i]);
    den += std::norm(G.samples[i]);
  }
  if (den == 0.0) throw std::invalid_argument("stargen_residual: zero symbol");
  return std::sqrt(num / den);
}

StarGenFunction stargenfunction_projector(const WaveFunction& eigenstate, const ops::Action& op,
                                          double eigenvalue, const SpatialGrid& pgrid,
                                          double residual_tol, std::string tag) {
  const double r = ops::eigen_residual(eigenstate, op, eigenvalue);
  if (r > residual_tol)
    throw std::invalid_argument("stargenfunction_projector: state eigen-residual " +
                                std::to_string(r) + " above tolerance");
  WeylSymbol proj = wigner::weyl_symbol(eigenstate, pgrid);
  return StarGenFunction{proj.field(), eigenvalue, std::move(tag)};
}

}  // namespace psbohm::moyal
