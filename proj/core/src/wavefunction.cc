#include "psbohm/wavefunction.hpp"

#include <cmath>
#include <stdexcept>

namespace psbohm {

double WaveFunction::norm() const {
  double s = 0.0;
  for (const cplx& v : samples) s += std::norm(v);
  return std::sqrt(s * grid.volume_element());
}

void WaveFunction::normalize() {
  double n = norm();
  if (!(n > 0.0)) throw std::runtime_error("wavefunction: cannot normalize identically-zero state");
  double inv = 1.0 / n;
  for (cplx& v : samples) v *= inv;
}

double WaveFunction::boundary_decay() const {
  double peak = 0.0;
  for (const cplx& v : samples) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double worst = 0.0;
  const auto& shape = samples.shape();
  for (std::size_t lin = 0; lin < samples.size(); ++lin) {
    std::vector<int> idx = samples.unravel(lin);
    bool boundary = false;
    for (int d = 0; d < static_cast<int>(shape.size()); ++d)
      if (idx[static_cast<size_t>(d)] == 0 || idx[static_cast<size_t>(d)] == shape[static_cast<size_t>(d)] - 1) boundary = true;
    if (boundary) worst = std::max(worst, std::abs(samples[lin]));
  }
  return worst / peak;
}

bool WaveFunction::support_ok(double decay_threshold) const {
  return boundary_decay() < decay_threshold;
}

SpatialGrid momentum_grid(const SpatialGrid& xgrid, double hbar) {
  SpatialGrid dual = xgrid.dual();
  std::vector<SpatialGrid::Axis> axes;
  for (int d = 0; d < dual.dims(); ++d) {
    SpatialGrid::Axis a = dual.axis(d);
    a.min *= hbar;
    a.step *= hbar;
    axes.push_back(a);
  }
  return SpatialGrid(std::move(axes));
}

MomentumRepresentation momentum_representation(const WaveFunction& psi) {
  GridArray<cplx> W = fourier::to_frequency(psi.grid, psi.samples);
  double scale = std::pow(psi.hbar, -0.5 * psi.dims());
  for (cplx& v : W) v *= scale;
  return MomentumRepresentation{momentum_grid(psi.grid, psi.hbar), std::move(W)};
}

namespace ops {

Action multiply(GridArray<double> values) {
  return [values = std::move(values)](const WaveFunction& psi) {
    if (values.size() != psi.samples.size())
      throw std::invalid_argument("ops::multiply: size mismatch");
    GridArray<cplx> out = psi.samples;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= values[i];
    return out;
  };
}

Action momentum(int axis) {
  return [axis](const WaveFunction& psi) {
    GridArray<cplx> out = fourier::derivative(psi.grid, psi.samples, axis, 1);
    const cplx f(0.0, -psi.hbar);
    for (cplx& v : out) v *= f;
    return out;
  };
}

Action kinetic() {
  return [](const WaveFunction& psi) {
    GridArray<cplx> out(std::vector<int>(psi.samples.shape()));
    for (int d = 0; d < psi.dims(); ++d) {
      GridArray<cplx> dd = fourier::derivative(psi.grid, psi.samples, d, 2);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += dd[i];
    }
    const double f = -psi.hbar * psi.hbar / (2.0 * psi.mass);
    for (cplx& v : out) v *= f;
    return out;
  };
}

Action hamiltonian(GridArray<double> potential) {
  Action kin = kinetic();
  Action pot = multiply(std::move(potential));
  return [kin, pot](const WaveFunction& psi) {
    GridArray<cplx> out = kin(psi);
    GridArray<cplx> vp = pot(psi);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += vp[i];
    return out;
  };
}

Action angular_momentum(int axis) {
  return [axis](const WaveFunction& psi) {
    if (psi.dims() != 3) throw std::invalid_argument("ops::angular_momentum: 3D states only");
    const int a = (axis + 1) % 3, b = (axis + 2) % 3;
    GridArray<cplx> da = fourier::derivative(psi.grid, psi.samples, a, 1);
    GridArray<cplx> db = fourier::derivative(psi.grid, psi.samples, b, 1);
    GridArray<cplx> out(std::vector<int>(psi.samples.shape()));
    const cplx f(0.0, -psi.hbar);
    for (std::size_t lin = 0; lin < out.size(); ++lin) {
      std::vector<int> idx = out.unravel(lin);
      const double xa = psi.grid.coord(a, idx[static_cast<size_t>(a)]);
      const double xb = psi.grid.coord(b, idx[static_cast<size_t>(b)]);
      out[lin] = f * (xa * db[lin] - xb * da[lin]);
    }
    return out;
  };
}

Action angular_momentum_squared() {
  return [](const WaveFunction& psi) {
    if (psi.dims() != 3) throw std::invalid_argument("ops::angular_momentum_squared: 3D states only");
    GridArray<cplx> out(std::vector<int>(psi.samples.shape()));
    for (int axis = 0; axis < 3; ++axis) {
      Action l = angular_momentum(axis);
      WaveFunction tmp = psi;
      tmp.samples = l(psi);
      GridArray<cplx> ll = l(tmp);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += ll[i];
    }
    return out;
  };
}

cplx expectation(const WaveFunction& psi, const Action& op) {
  GridArray<cplx> ap = op(psi);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < ap.size(); ++i) acc += std::conj(psi.samples[i]) * ap[i];
  return acc * psi.grid.volume_element();
}

double eigen_residual(const WaveFunction& psi, const Action& op, double eigenvalue) {
  GridArray<cplx> ap = op(psi);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ap.size(); ++i) {
    num += std::norm(ap[i] - eigenvalue * psi.samples[i]);
    den += std::norm(psi.samples[i]);
  }
  if (den == 0.0) throw std::invalid_argument("ops::eigen_residual: zero state");
  return std::sqrt(num / den);
}

}  // namespace ops

}  // namespace psbohm
