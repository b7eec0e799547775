#include "psbohm/cohen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "psbohm/fourier.hpp"
#include "psbohm/moyal.hpp"

namespace psbohm::cohen {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_lattice(const PhaseSpaceFunction& F, const CohenKernel& k, const char* who) {
  if (!k.has_samples) throw std::invalid_argument(std::string(who) + ": kernel has no sampled form");
  if (F.xgrid != k.xgrid || F.pgrid != k.pgrid)
    throw std::invalid_argument(std::string(who) + ": operand grids differ from the kernel lattice");
}

// q(-i d_x, -i d_p) applied to a polynomial symbol; exact when every term of
// A has total degree <= 2 (third derivatives vanish, so the quadratic
// truncation of the kernel is the whole operator).
PolySymbol taylor_apply(const PolySymbol& A, const QuadraticForm& q) {
  if (A.has_grid_terms())
    throw std::invalid_argument("to_f_symbol: grid-coefficient symbols need the sampled route");
  for (const auto& t : A.terms()) {
    int deg = 0;
    for (int d = 0; d < A.dims(); ++d)
      deg += t.xpow[static_cast<size_t>(d)] + t.ppow[static_cast<size_t>(d)];
    if (deg > 2)
      throw std::invalid_argument(
          "to_f_symbol: polynomial degree above 2 has no exact finite realization for this kernel");
  }
  PolySymbol out = A;
  out.scale(q.c);
  const cplx mi(0.0, -1.0);
  for (int a = 0; a < A.dims(); ++a) {
    if (q.lx[a] != 0.0) {
      PolySymbol d = A.derivative_x(a);
      d.scale(mi * q.lx[a]);
      out.add_symbol(d);
    }
    if (q.le[a] != 0.0) {
      PolySymbol d = A.derivative_p(a);
      d.scale(mi * q.le[a]);
      out.add_symbol(d);
    }
    for (int b = 0; b < A.dims(); ++b) {
      if (q.xx[a][b] != 0.0) {
        PolySymbol d = A.derivative_x(a).derivative_x(b);
        d.scale(-q.xx[a][b]);
        out.add_symbol(d);
      }
      if (q.xe[a][b] != 0.0) {
        PolySymbol d = A.derivative_x(a).derivative_p(b);
        d.scale(-q.xe[a][b]);
        out.add_symbol(d);
      }
      if (q.ee[a][b] != 0.0) {
        PolySymbol d = A.derivative_p(a).derivative_p(b);
        d.scale(-q.ee[a][b]);
        out.add_symbol(d);
      }
    }
  }
  out.simplify();
  return out;
}

// Gridded route: multiply the characteristic spectrum by the kernel value at
// the mirrored frequency (the weighting that keeps Int F A invariant acts at
// (-xi, -eta) on the observable side). use_inverse selects 1/f vs f.
PhaseSpaceFunction spectrum_weight(const PhaseSpaceFunction& A, const CohenKernel& k,
                                   bool use_inverse) {
  check_lattice(A, k, use_inverse ? "to_f_symbol" : "from_f_symbol");
  auto axes = fourier::concat_axes(A.xgrid, A.pgrid);
  GridArray<cplx> T = fourier::char_forward(axes, A.samples);
  const int Nx = k.xgrid.axis(0).count, Np = k.pgrid.axis(0).count;
  for (int m = 0; m < Nx; ++m)
    for (int n = 0; n < Np; ++n) {
      const std::size_t lin = static_cast<size_t>(m) * static_cast<size_t>(Np) + static_cast<size_t>(n);
      const std::size_t mir = static_cast<size_t>((Nx - m) % Nx) * static_cast<size_t>(Np) +
                              static_cast<size_t>((Np - n) % Np);
      if (k.mask[mir] != 0) {
        T[lin] = 0.0;
      } else {
        T[lin] *= use_inverse ? k.inverse_samples[mir] : k.samples[mir];
      }
    }
  PhaseSpaceFunction out = A;
  out.samples = fourier::char_inverse(axes, T);
  return out;
}

WeylSymbol map_symbol(const WeylSymbol& A, const CohenKernel& k, bool forward) {
  if (k.tag == KernelTag::wigner) return A;
  if (A.is_poly()) {
    if (k.moments) return WeylSymbol(moment_map_poly(A.poly(), *k.moments, k.hbar, !forward), k.hbar);
    if (k.has_taylor) return WeylSymbol(taylor_apply(A.poly(), forward ? k.taylor_inv : k.taylor_f), k.hbar);
    throw std::invalid_argument(
        "to_f_symbol: kernel has no polynomial realization; sample the symbol onto the lattice");
  }
  return WeylSymbol(spectrum_weight(A.field(), k, forward));
}

}  // namespace

double QuadraticForm::eval(const double* xi, const double* eta, int dims) const {
  double v = c;
  for (int a = 0; a < dims; ++a) {
    v += lx[a] * xi[a] + le[a] * eta[a];
    for (int b = 0; b < dims; ++b)
      v += xx[a][b] * xi[a] * xi[b] + xe[a][b] * xi[a] * eta[b] + ee[a][b] * eta[a] * eta[b];
  }
  return v;
}

CohenKernel wigner_kernel(double hbar) {
  CohenKernel k;
  k.tag = KernelTag::wigner;
  k.hbar = hbar;
  return k;
}

CohenKernel custom_kernel(const SpatialGrid& xg, const SpatialGrid& pg, GridArray<cplx> samples,
                          double hbar, double eps_kernel, const GridArray<unsigned char>* invalid) {
  if (xg.dims() != 1 || pg.dims() != 1)
    throw std::invalid_argument("custom_kernel: sampled kernels cover 1D phase spaces only");
  const int Nx = xg.axis(0).count, Np = pg.axis(0).count;
  if (samples.size() != static_cast<size_t>(Nx) * static_cast<size_t>(Np))
    throw std::invalid_argument("custom_kernel: sample count does not match the dual lattice");
  if (invalid && invalid->size() != samples.size())
    throw std::invalid_argument("custom_kernel: invalid-mask size mismatch");

  CohenKernel k;
  k.tag = KernelTag::custom;
  k.hbar = hbar;
  k.has_samples = true;
  k.xgrid = xg;
  k.pgrid = pg;
  k.samples = std::move(samples);

  const std::size_t center = static_cast<size_t>(Nx / 2) * static_cast<size_t>(Np) +
                             static_cast<size_t>(Np / 2);
  const cplx f00 = k.samples[center];
  if (std::abs(f00 - 1.0) > 1e-10)
    throw std::invalid_argument("custom_kernel: f(0,0) deviates from 1 beyond 1e-10");

  k.mask = GridArray<unsigned char>(std::vector<int>{Nx, Np});
  k.inverse_samples = GridArray<cplx>(std::vector<int>{Nx, Np});
  std::size_t masked = 0;
  for (std::size_t i = 0; i < k.samples.size(); ++i) {
    const bool bad = (invalid && (*invalid)[i] != 0) || std::abs(k.samples[i]) < eps_kernel;
    if (bad) {
      k.mask[i] = 1;
      ++masked;
    } else {
      k.inverse_samples[i] = 1.0 / k.samples[i];
    }
  }
  k.masked_fraction = static_cast<double>(masked) / static_cast<double>(k.samples.size());
  return k;
}

CohenKernel gaussian_kernel(const SpatialGrid& xg, const SpatialGrid& pg, double sx, double sp,
                            double hbar, double eps_kernel) {
  if (xg.dims() != 1 || pg.dims() != 1)
    throw std::invalid_argument("gaussian_kernel: 1D phase spaces only");
  const int Nx = xg.axis(0).count, Np = pg.axis(0).count;
  const double dxi = kTwoPi / xg.span(0), deta = kTwoPi / pg.span(0);
  GridArray<cplx> s(std::vector<int>{Nx, Np});
  for (int m = 0; m < Nx; ++m) {
    const double xi = (m - Nx / 2) * dxi;
    for (int n = 0; n < Np; ++n) {
      const double eta = (n - Np / 2) * deta;
      s[static_cast<size_t>(m * Np + n)] = std::exp(-sx * xi * xi - sp * eta * eta);
    }
  }
  CohenKernel k = custom_kernel(xg, pg, std::move(s), hbar, eps_kernel);
  k.has_taylor = true;
  k.taylor_f.c = 1.0;
  k.taylor_f.xx[0][0] = -sx;
  k.taylor_f.ee[0][0] = -sp;
  k.taylor_inv.c = 1.0;
  k.taylor_inv.xx[0][0] = sx;
  k.taylor_inv.ee[0][0] = sp;
  return k;
}

PhaseSpaceFunction to_f_distribution(const PhaseSpaceFunction& F, const CohenKernel& k,
                                     double max_masked_fraction, OccupancyReport* report) {
  if (k.tag == KernelTag::wigner) {
    if (report) *report = OccupancyReport{};
    return F;
  }
  check_lattice(F, k, "to_f_distribution");
  auto axes = fourier::concat_axes(F.xgrid, F.pgrid);
  GridArray<cplx> T = fourier::char_forward(axes, F.samples);

  double peak = 0.0;
  for (const cplx& v : T) peak = std::max(peak, std::abs(v));
  const double floor = 1e-10 * peak;
  OccupancyReport rep;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (std::abs(T[i]) > floor) {
      ++rep.occupied;
      if (k.mask[i] != 0) ++rep.masked_occupied;
    }
  }
  rep.fraction = rep.occupied ? static_cast<double>(rep.masked_occupied) / static_cast<double>(rep.occupied)
                              : 0.0;
  if (report) *report = rep;
  if (rep.fraction > max_masked_fraction)
    throw MaskError("to_f_distribution: kernel mask kills " + std::to_string(rep.fraction) +
                    " of the occupied spectrum (bound " + std::to_string(max_masked_fraction) + ")");

  for (std::size_t i = 0; i < T.size(); ++i) T[i] = (k.mask[i] != 0) ? cplx(0.0) : T[i] * k.samples[i];
  PhaseSpaceFunction out = F;
  out.samples = fourier::char_inverse(axes, T);
  return out;
}

WeylSymbol to_f_symbol(const WeylSymbol& A, const CohenKernel& k) { return map_symbol(A, k, true); }

WeylSymbol from_f_symbol(const WeylSymbol& A, const CohenKernel& k) { return map_symbol(A, k, false); }

WeylSymbol f_star(const WeylSymbol& A, const WeylSymbol& B, const CohenKernel& k) {
  if (k.tag == KernelTag::wigner) return moyal::moyal_star(A, B);
  WeylSymbol aw = from_f_symbol(A, k);
  WeylSymbol bw = from_f_symbol(B, k);
  WeylSymbol cw = moyal::moyal_star(aw, bw);
  return to_f_symbol(cw, k);
}

PhaseSpaceFunction f_stargenfunction(const PhaseSpaceFunction& G, const CohenKernel& k) {
  if (k.tag == KernelTag::wigner) return G;
  return spectrum_weight(G, k, true);
}

double probability_f(const PhaseSpaceFunction& F_f, const PhaseSpaceFunction& G_f) {
  if (F_f.xgrid != G_f.xgrid || F_f.pgrid != G_f.pgrid)
    throw std::invalid_argument("probability_f: grid mismatch");
  GridArray<cplx> prod = F_f.samples;
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= G_f.samples[i];
  return std::real(quadrature2(F_f.xgrid, F_f.pgrid, prod));
}

PolySymbol moment_map_poly(const PolySymbol& A, const madelung::StateMoments& m, double hbar,
                           bool inverse) {
  if (A.dims() != m.dims) throw std::invalid_argument("moment_map_poly: dims mismatch");
  if (A.has_grid_terms())
    throw std::invalid_argument("moment_map_poly: grid-coefficient symbols are not supported");
  if (A.p_degree() > 2)
    throw std::invalid_argument(
        "moment_map_poly: momentum degree above 2 has no exact finite realization");

  const double sign = inverse ? 1.0 : -1.0;
  const double pref = sign * 0.25 * hbar * hbar;
  PolySymbol out = A;
  for (int a = 0; a < m.dims; ++a)
    for (int b = 0; b < m.dims; ++b) {
      PolySymbol B = A.derivative_p(a).derivative_p(b);
      if (B.zero()) continue;
      if (B.x_degree() > 2)
        throw std::invalid_argument(
            "moment_map_poly: position degree above 2 under the momentum Hessian has no exact "
            "finite realization");

      PolySymbol r0 = B;
      r0.scale(pref * m.g0[a][b]);
      out.add_symbol(r0);

      for (int kx = 0; kx < m.dims; ++kx) {
        const double t1 = m.g1[kx][a][b] - m.mu1[kx] * m.g0[a][b];
        if (t1 != 0.0) {
          PolySymbol r1 = B.derivative_x(kx);
          if (!r1.zero()) {
            r1.scale(pref * t1);
            out.add_symbol(r1);
          }
        }
        for (int lx = 0; lx < m.dims; ++lx) {
          const double t2 = m.g2[kx][lx][a][b] - m.mu1[kx] * m.g1[lx][a][b] -
                            m.mu1[lx] * m.g1[kx][a][b] - m.mu2[kx][lx] * m.g0[a][b] +
                            2.0 * m.mu1[kx] * m.mu1[lx] * m.g0[a][b];
          if (t2 != 0.0) {
            PolySymbol r2 = B.derivative_x(kx).derivative_x(lx);
            if (!r2.zero()) {
              r2.scale(0.5 * pref * t2);
              out.add_symbol(r2);
            }
          }
        }
      }
    }
  out.simplify();
  return out;
}

}  // namespace psbohm::cohen
