#include "psbohm/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace psbohm::states {

namespace {
constexpr double kPi = std::numbers::pi;
}

WaveFunction coherent(const SpatialGrid& grid, const std::vector<double>& x0,
                      const std::vector<double>& p0, const std::vector<double>& dx,
                      double hbar, double mass) {
  const int d = grid.dims();
  if (static_cast<int>(x0.size()) != d || static_cast<int>(p0.size()) != d || static_cast<int>(dx.size()) != d)
    throw std::invalid_argument("coherent: parameter dims mismatch");
  for (double w : dx)
    if (!(w > 0.0)) throw std::invalid_argument("coherent: widths must be positive");

  std::vector<int> shape;
  for (int a = 0; a < d; ++a) shape.push_back(grid.axis(a).count);
  WaveFunction psi{grid, GridArray<cplx>(shape), hbar, mass};
  for (std::size_t lin = 0; lin < psi.samples.size(); ++lin) {
    std::vector<int> idx = psi.samples.unravel(lin);
    double amp = 0.0, phase = 0.0;
    for (int a = 0; a < d; ++a) {
      double x = grid.coord(a, idx[static_cast<size_t>(a)]);
      double u = x - x0[static_cast<size_t>(a)];
      amp += -u * u / (4.0 * dx[static_cast<size_t>(a)] * dx[static_cast<size_t>(a)]);
      amp += -0.25 * std::log(2.0 * kPi * dx[static_cast<size_t>(a)] * dx[static_cast<size_t>(a)]);
      phase += p0[static_cast<size_t>(a)] * x / hbar;
    }
    psi.samples[lin] = std::polar(std::exp(amp), phase);
  }
  psi.normalize();
  return psi;
}

WaveFunction oscillator_eigenstate(const SpatialGrid& grid1d, int n, double mass, double omega, double hbar) {
  if (grid1d.dims() != 1) throw std::invalid_argument("oscillator_eigenstate: 1D grids only");
  if (n < 0) throw std::invalid_argument("oscillator_eigenstate: n must be >= 0");
  const int N = grid1d.axis(0).count;
  WaveFunction psi{grid1d, GridArray<cplx>({N}), hbar, mass};
  const double a = std::sqrt(mass * omega / hbar);  // scaled coordinate u = a x
  for (int i = 0; i < N; ++i) {
    double u = a * grid1d.coord(0, i);
    // normalized recurrence: h_0 = pi^{-1/4} e^{-u^2/2}, h_{n+1} =
    // u sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1}
    double h0 = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
    double hm = 0.0, h = h0;
    for (int k = 0; k < n; ++k) {
      double next = u * std::sqrt(2.0 / (k + 1)) * h - std::sqrt(static_cast<double>(k) / (k + 1)) * hm;
      hm = h;
      h = next;
    }
    psi.samples[static_cast<size_t>(i)] = std::sqrt(a) * h;
  }
  psi.normalize();
  return psi;
}

WaveFunction gaussian_superposition(const SpatialGrid& grid1d, const std::vector<GaussianComponent>& parts,
                                    double hbar, double mass) {
  if (grid1d.dims() != 1) throw std::invalid_argument("gaussian_superposition: 1D grids only");
  if (parts.empty()) throw std::invalid_argument("gaussian_superposition: need at least one component");
  const int N = grid1d.axis(0).count;
  WaveFunction psi{grid1d, GridArray<cplx>({N}), hbar, mass};
  for (int i = 0; i < N; ++i) {
    double x = grid1d.coord(0, i);
    cplx v = 0.0;
    for (const GaussianComponent& c : parts) {
      double u = x - c.x0;
      double amp = std::exp(-u * u / (4.0 * c.dx * c.dx)) * std::pow(2.0 * kPi * c.dx * c.dx, -0.25);
      v += c.amplitude * std::polar(amp, c.p0 * x / hbar);
    }
    psi.samples[static_cast<size_t>(i)] = v;
  }
  psi.normalize();
  return psi;
}

WaveFunction lz_eigenstate_3d(const SpatialGrid& grid3d, double hbar, double mass) {
  if (grid3d.dims() != 3) throw std::invalid_argument("lz_eigenstate_3d: 3D grids only");
  auto shape = grid3d.shape();
  WaveFunction psi{grid3d, GridArray<cplx>({shape[0], shape[1], shape[2]}), hbar, mass};
  for (std::size_t lin = 0; lin < psi.samples.size(); ++lin) {
    std::vector<int> idx = psi.samples.unravel(lin);
    double x = grid3d.coord(0, idx[0]);
    double y = grid3d.coord(1, idx[1]);
    double z = grid3d.coord(2, idx[2]);
    double r2 = x * x + y * y + z * z;
    psi.samples[lin] = cplx(x, y) * std::exp(-0.5 * r2);
  }
  psi.normalize();
  return psi;
}

}  // namespace psbohm::states
