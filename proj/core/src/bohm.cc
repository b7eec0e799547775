#include "psbohm/bohm.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "psbohm/fourier.hpp"
#include "psbohm/wigner.hpp"

namespace psbohm::bohm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<int> grid_shape(const SpatialGrid& g) {
  std::vector<int> s(static_cast<size_t>(g.dims()));
  for (int d = 0; d < g.dims(); ++d) s[static_cast<size_t>(d)] = g.axis(d).count;
  return s;
}

// Measure characteristic on the full dual lattice: fill w_i e^{i eta p_i}
// into the point's x-row, then one dual transform along x. 1D.
GridArray<cplx> measure_lattice_characteristic(const BohmMeasure& m, const SpatialGrid& pgrid) {
  const int Nx = m.xgrid.axis(0).count;
  const int Np = pgrid.axis(0).count;
  const double deta = kTwoPi / pgrid.span(0);
  GridArray<cplx> B(std::vector<int>{Nx, Np});
  for (const MeasurePoint& pt : m.points) {
    cplx* row = B.data() + pt.node * static_cast<size_t>(Np);
    for (int n = 0; n < Np; ++n) {
      const double eta = (n - Np / 2) * deta;
      row[n] += pt.weight * std::exp(cplx(0.0, eta * pt.momentum[0]));
    }
  }
  fourier::axis_to_dual(B, 0, m.xgrid.axis(0), +1, 1.0);
  return B;
}

}  // namespace

BohmMeasure bohm_measure(const madelung::MadelungFields& fields) {
  BohmMeasure m;
  m.xgrid = fields.grid;
  m.dims = fields.dims();
  m.hbar = fields.hbar;
  m.mass = fields.mass;
  const double dv = fields.grid.volume_element();
  const std::size_t n = fields.density.size();
  m.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (fields.masked(i)) {
      m.masked_deficit += fields.density[i] * dv;
      continue;
    }
    MeasurePoint pt;
    pt.node = i;
    pt.weight = fields.density[i] * dv;
    const std::vector<int> idx = fields.density.unravel(i);
    for (int d = 0; d < m.dims; ++d) {
      pt.x[d] = fields.grid.coord(d, idx[static_cast<size_t>(d)]);
      pt.momentum[d] = fields.grad_phase[static_cast<size_t>(d)][i];
    }
    m.total_weight += pt.weight;
    m.points.push_back(pt);
  }
  return m;
}

cplx characteristic_function(const BohmMeasure& m, const double* xi, const double* eta) {
  cplx acc(0.0, 0.0);
  for (const MeasurePoint& pt : m.points) {
    double phase = 0.0;
    for (int d = 0; d < m.dims; ++d) phase += xi[d] * pt.x[d] + eta[d] * pt.momentum[d];
    acc += pt.weight * std::exp(cplx(0.0, phase));
  }
  return acc;
}

cplx characteristic_function(const BohmMeasure& m, double xi, double eta) {
  if (m.dims != 1) throw std::invalid_argument("characteristic_function: scalar overload is 1D");
  return characteristic_function(m, &xi, &eta);
}

cohen::CohenKernel bohm_kernel(const WaveFunction& psi, const madelung::MadelungFields& fields,
                               const SpatialGrid& pgrid, double eps_denominator,
                               double eps_kernel) {
  if (psi.dims() != 1 || pgrid.dims() != 1)
    throw std::invalid_argument("bohm_kernel: sampled kernels cover 1D states only");
  if (psi.grid != fields.grid)
    throw std::invalid_argument("bohm_kernel: decomposition grid differs from the state grid");

  PhaseSpaceFunction W = wigner::wigner_transform(psi, pgrid);
  auto axes = fourier::concat_axes(W.xgrid, W.pgrid);
  GridArray<cplx> D = fourier::char_forward(axes, W.samples);

  const int Nx = psi.grid.axis(0).count;
  const int Np = pgrid.axis(0).count;
  const double dx = psi.grid.axis(0).step;
  const double deta = kTwoPi / pgrid.span(0);

  GridArray<cplx> dpsi = fourier::derivative(psi.grid, psi.samples, 0, 1);
  GridArray<cplx> N(std::vector<int>{Nx, Np});
  for (int j = 0; j < Nx; ++j) {
    const cplx v = psi.samples[static_cast<size_t>(j)];
    const double dens = std::norm(v);
    if (dens <= 0.0) continue;
    const double w = dens * dx;
    const double gp = psi.hbar * std::imag(std::conj(v) * dpsi[static_cast<size_t>(j)]) / dens;
    cplx* row = N.data() + static_cast<size_t>(j) * static_cast<size_t>(Np);
    for (int n = 0; n < Np; ++n) {
      const double eta = (n - Np / 2) * deta;
      row[n] = w * std::exp(cplx(0.0, eta * gp));
    }
  }
  fourier::axis_to_dual(N, 0, psi.grid.axis(0), +1, 1.0);

  const std::size_t center = static_cast<size_t>(Nx / 2) * static_cast<size_t>(Np) +
                             static_cast<size_t>(Np / 2);
  const cplx ratio = N[center] / D[center];
  if (std::abs(ratio - 1.0) > 1e-10)
    throw std::runtime_error("bohm_kernel: measure weight disagrees with the state norm by " +
                             std::to_string(std::abs(ratio - 1.0)));

  double max_d = 0.0;
  for (const cplx& v : D) max_d = std::max(max_d, std::abs(v));
  const double floor = eps_denominator * max_d;

  GridArray<cplx> f(std::vector<int>{Nx, Np});
  GridArray<unsigned char> invalid(std::vector<int>{Nx, Np});
  for (int mi = 0; mi < Nx; ++mi)
    for (int n = 0; n < Np; ++n) {
      const std::size_t lin = static_cast<size_t>(mi) * static_cast<size_t>(Np) +
                              static_cast<size_t>(n);
      if (n == Np / 2) {
        f[lin] = 1.0;  // numerator and denominator coincide identically here
      } else if (std::abs(D[lin]) < floor) {
        invalid[lin] = 1;
      } else {
        f[lin] = N[lin] / D[lin];
      }
    }

  cohen::CohenKernel k =
      cohen::custom_kernel(psi.grid, pgrid, std::move(f), psi.hbar, eps_kernel, &invalid);
  k.tag = cohen::KernelTag::bohm;
  k.moments = madelung::state_moments(psi, fields);
  return k;
}

cohen::CohenKernel kernel_moments(const WaveFunction& psi, const madelung::MadelungFields& fields) {
  cohen::CohenKernel k;
  k.tag = cohen::KernelTag::bohm;
  k.hbar = psi.hbar;
  k.moments = madelung::state_moments(psi, fields);
  return k;
}

GridArray<double> local_expectation(const WaveFunction& psi, const ops::Action& op,
                                    const madelung::MadelungFields& fields) {
  if (psi.grid != fields.grid)
    throw std::invalid_argument("local_expectation: decomposition grid differs from the state grid");
  GridArray<cplx> ap = op(psi);
  GridArray<double> out(psi.samples.shape());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (fields.masked(i)) continue;
    out[i] = std::real(std::conj(psi.samples[i]) * ap[i]) / fields.density[i];
  }
  return out;
}

double expectation_bohm(const BohmMeasure& m, const PolySymbol& A) {
  if (A.dims() != m.dims) throw std::invalid_argument("expectation_bohm: dims mismatch");
  cplx acc(0.0, 0.0);
  const bool gridded = A.has_grid_terms();
  for (const MeasurePoint& pt : m.points) {
    const cplx v = gridded ? A.evaluate_at(pt.x, pt.momentum, pt.node)
                           : A.evaluate(pt.x, pt.momentum);
    acc += pt.weight * v;
  }
  return std::real(acc);
}

double expectation_local(const BohmMeasure& m, const GridArray<double>& field) {
  double acc = 0.0;
  for (const MeasurePoint& pt : m.points) acc += pt.weight * field[pt.node];
  return acc;
}

double energy_mean(const BohmMeasure& m, const GridArray<double>& potential,
                   const madelung::MadelungFields& fields) {
  if (potential.size() != fields.density.size())
    throw std::invalid_argument("energy_mean: potential size mismatch");
  double acc = 0.0;
  for (const MeasurePoint& pt : m.points) {
    double kin = 0.0;
    for (int d = 0; d < m.dims; ++d) kin += pt.momentum[d] * pt.momentum[d];
    acc += pt.weight *
           (kin / (2.0 * m.mass) + potential[pt.node] + fields.quantum_potential[pt.node]);
  }
  return acc;
}

MomentumStarGen momentum_stargenfunction(const cohen::CohenKernel& k, const SpatialGrid& pgrid,
                                         double p_star, double xi_independence_tol) {
  if (pgrid.dims() != 1)
    throw std::invalid_argument("momentum_stargenfunction: 1D momentum grids only");
  const int Np = pgrid.axis(0).count;
  const double deta = kTwoPi / pgrid.span(0);

  MomentumStarGen sg;
  sg.pgrid = pgrid;
  sg.hbar = k.hbar;
  sg.p_star = pgrid.coord(0, nearest_node(pgrid, {p_star})[0]);
  sg.weights = GridArray<cplx>(std::vector<int>{Np});
  sg.eta_mask = GridArray<unsigned char>(std::vector<int>{Np});

  if (k.has_samples) {
    if (k.pgrid != pgrid)
      throw std::invalid_argument("momentum_stargenfunction: pgrid differs from the kernel lattice");
    const int Nx = k.xgrid.axis(0).count;
    const std::size_t stride = static_cast<size_t>(Np);
    const std::size_t c0 = static_cast<size_t>(Nx / 2) * stride;
    double worst = 0.0;
    for (int n = 0; n < Np; ++n) {
      if (k.mask[c0 + static_cast<size_t>(n)] != 0) continue;
      const cplx f0 = k.samples[c0 + static_cast<size_t>(n)];
      for (int mi = 0; mi < Nx; ++mi) {
        const std::size_t lin = static_cast<size_t>(mi) * stride + static_cast<size_t>(n);
        if (k.mask[lin] != 0) continue;
        worst = std::max(worst, std::abs(k.samples[lin] - f0) / std::abs(f0));
      }
    }
    if (worst > xi_independence_tol)
      throw std::invalid_argument(
          "momentum_stargenfunction: kernel varies along xi (relative spread " +
          std::to_string(worst) + ")");
    for (int n = 0; n < Np; ++n) {
      const std::size_t mir = c0 + static_cast<size_t>((Np - n) % Np);
      if (k.mask[mir] != 0) {
        sg.eta_mask[static_cast<size_t>(n)] = 1;
      } else {
        sg.weights[static_cast<size_t>(n)] = k.inverse_samples[mir];
      }
    }
  } else if (k.tag == cohen::KernelTag::wigner) {
    for (int n = 0; n < Np; ++n) sg.weights[static_cast<size_t>(n)] = 1.0;
  } else {
    throw std::invalid_argument("momentum_stargenfunction: kernel has no sampled lattice");
  }

  sg.spectrum = GridArray<cplx>(std::vector<int>{Np});
  for (int n = 0; n < Np; ++n) {
    const double eta = (n - Np / 2) * deta;
    sg.spectrum[static_cast<size_t>(n)] =
        sg.weights[static_cast<size_t>(n)] * std::exp(cplx(0.0, eta * sg.p_star));
  }
  const std::vector<SpatialGrid::Axis> paxes{pgrid.axis(0)};
  sg.values = fourier::char_inverse(paxes, sg.spectrum);
  return sg;
}

double momentum_stargen_residual(const MomentumStarGen& sg, const cohen::CohenKernel& k) {
  const int Np = sg.pgrid.axis(0).count;
  const double deta = kTwoPi / sg.pgrid.span(0);

  GridArray<cplx> ptheta(std::vector<int>{Np});
  for (int j = 0; j < Np; ++j)
    ptheta[static_cast<size_t>(j)] = sg.pgrid.coord(0, j) * sg.values[static_cast<size_t>(j)];
  const std::vector<SpatialGrid::Axis> paxes{sg.pgrid.axis(0)};
  GridArray<cplx> cp = fourier::char_forward(paxes, ptheta);

  // d/d eta of ln f along the xi = 0 column, centered ratio-log differences
  // (the ratio keeps the branch local).
  std::vector<cplx> dlog(static_cast<size_t>(Np), cplx(0.0, 0.0));
  std::vector<char> valid(static_cast<size_t>(Np), 0);
  if (k.has_samples) {
    const int Nx = k.xgrid.axis(0).count;
    const std::size_t c0 = static_cast<size_t>(Nx / 2) * static_cast<size_t>(Np);
    for (int n = 1; n + 1 < Np; ++n) {
      const std::size_t lm = c0 + static_cast<size_t>(n - 1);
      const std::size_t l0 = c0 + static_cast<size_t>(n);
      const std::size_t lp = c0 + static_cast<size_t>(n + 1);
      if (k.mask[lm] != 0 || k.mask[l0] != 0 || k.mask[lp] != 0) continue;
      dlog[static_cast<size_t>(n)] = std::log(k.samples[lp] / k.samples[lm]) / (2.0 * deta);
      valid[static_cast<size_t>(n)] = 1;
    }
  } else if (k.tag == cohen::KernelTag::wigner) {
    for (int n = 0; n < Np; ++n) valid[static_cast<size_t>(n)] = 1;
  } else {
    throw std::invalid_argument("momentum_stargen_residual: kernel has no sampled lattice");
  }

  double num = 0.0, den = 0.0;
  for (int n = 0; n < Np; ++n) {
    const int nm = (Np - n) % Np;
    if (!valid[static_cast<size_t>(nm)]) continue;
    const cplx th = sg.spectrum[static_cast<size_t>(n)];
    const cplx r = cp[static_cast<size_t>(n)] + cplx(0.0, 1.0) * dlog[static_cast<size_t>(nm)] * th -
                   sg.p_star * th;
    num += std::norm(r);
    den += std::norm(th);
  }
  if (den <= 0.0) throw std::runtime_error("momentum_stargen_residual: no valid bins");
  return std::sqrt(num / den);
}

MomentumDistribution momentum_probability(const BohmMeasure& m, const MomentumStarGen& sg) {
  if (m.dims != 1) throw std::invalid_argument("momentum_probability: 1D measures only");
  const int Np = sg.pgrid.axis(0).count;
  const double dp = sg.pgrid.axis(0).step;
  const double deta = kTwoPi / sg.pgrid.span(0);

  std::vector<cplx> M(static_cast<size_t>(Np), cplx(0.0, 0.0));
  for (int n = 0; n < Np; ++n) {
    const double eta = (n - Np / 2) * deta;
    cplx acc(0.0, 0.0);
    for (const MeasurePoint& pt : m.points)
      acc += pt.weight * std::exp(cplx(0.0, eta * pt.momentum[0]));
    M[static_cast<size_t>(n)] = acc;
  }

  MomentumDistribution out;
  out.folded = GridArray<double>(std::vector<int>{Np});
  out.histogram = GridArray<double>(std::vector<int>{Np});
  const double pref = deta / kTwoPi;
  for (int j = 0; j < Np; ++j) {
    const double pj = sg.pgrid.coord(0, j);
    cplx acc(0.0, 0.0);
    for (int n = 0; n < Np; ++n) {
      const double eta = (n - Np / 2) * deta;
      acc += sg.weights[static_cast<size_t>(n)] * std::conj(M[static_cast<size_t>(n)]) *
             std::exp(cplx(0.0, eta * pj));
    }
    out.folded[static_cast<size_t>(j)] = pref * std::real(acc);
  }
  for (const MeasurePoint& pt : m.points) {
    const int j = nearest_node(sg.pgrid, {pt.momentum[0]})[0];
    out.histogram[static_cast<size_t>(j)] += pt.weight / dp;
  }
  return out;
}

GridArray<double> position_probability(const BohmMeasure& m, const cohen::CohenKernel& k) {
  GridArray<double> out(grid_shape(m.xgrid));
  if (k.has_samples && m.dims == 1) {
    if (k.xgrid != m.xgrid)
      throw std::invalid_argument("position_probability: kernel lattice differs from the measure");
    const int Nx = m.xgrid.axis(0).count;
    const int Np = k.pgrid.axis(0).count;
    const double dxi = kTwoPi / m.xgrid.span(0);
    std::vector<cplx> Mx(static_cast<size_t>(Nx), cplx(0.0, 0.0));
    for (int mi = 0; mi < Nx; ++mi) {
      const double xi = (mi - Nx / 2) * dxi;
      cplx acc(0.0, 0.0);
      for (const MeasurePoint& pt : m.points) acc += pt.weight * std::exp(cplx(0.0, xi * pt.x[0]));
      Mx[static_cast<size_t>(mi)] = acc;
    }
    const double pref = dxi / kTwoPi;
    for (int j = 0; j < Nx; ++j) {
      const double xj = m.xgrid.coord(0, j);
      cplx acc(0.0, 0.0);
      for (int mi = 0; mi < Nx; ++mi) {
        const std::size_t mir = static_cast<size_t>((Nx - mi) % Nx) * static_cast<size_t>(Np) +
                                static_cast<size_t>(Np / 2);
        if (k.mask[mir] != 0) continue;
        const double xi = (mi - Nx / 2) * dxi;
        acc += k.inverse_samples[mir] * std::conj(Mx[static_cast<size_t>(mi)]) *
               std::exp(cplx(0.0, xi * xj));
      }
      out[static_cast<size_t>(j)] = pref * std::real(acc);
    }
    return out;
  }
  const double dv = m.xgrid.volume_element();
  for (const MeasurePoint& pt : m.points) out[pt.node] += pt.weight / dv;
  return out;
}

double probability_bohm(const BohmMeasure& m, const PhaseSpaceFunction& G_weyl,
                        const cohen::CohenKernel& k) {
  if (!k.has_samples || m.dims != 1)
    throw std::invalid_argument("probability_bohm: 1D sampled kernels only");
  if (G_weyl.xgrid != k.xgrid || G_weyl.pgrid != k.pgrid || m.xgrid != k.xgrid)
    throw std::invalid_argument("probability_bohm: lattice mismatch");

  auto axes = fourier::concat_axes(k.xgrid, k.pgrid);
  GridArray<cplx> ghat = fourier::char_forward(axes, G_weyl.samples);
  GridArray<cplx> M = measure_lattice_characteristic(m, k.pgrid);

  const int Nx = k.xgrid.axis(0).count;
  const int Np = k.pgrid.axis(0).count;
  const double dxi = kTwoPi / k.xgrid.span(0);
  const double deta = kTwoPi / k.pgrid.span(0);

  cplx acc(0.0, 0.0);
  for (int mi = 0; mi < Nx; ++mi)
    for (int n = 0; n < Np; ++n) {
      const std::size_t lin = static_cast<size_t>(mi) * static_cast<size_t>(Np) +
                              static_cast<size_t>(n);
      const std::size_t mir = static_cast<size_t>((Nx - mi) % Nx) * static_cast<size_t>(Np) +
                              static_cast<size_t>((Np - n) % Np);
      if (k.mask[lin] != 0 || k.mask[mir] != 0) continue;
      acc += M[lin] * std::conj(k.inverse_samples[mir] * ghat[lin]);
    }
  return std::real(acc) * dxi * deta / (kTwoPi * kTwoPi);
}

}  // namespace psbohm::bohm
