#pragma once

#include <vector>

#include "psbohm/wavefunction.hpp"

namespace psbohm::states {

/// Gaussian packet  psi = prod_d [2 pi dx_d^2]^{-1/4}
///                        exp[-(x_d - x0_d)^2/(4 dx_d^2) + i p0_d x_d / hbar],
/// renormalized on the grid. Position variance dx^2, momentum variance
/// (hbar/(2 dx))^2 per axis.
WaveFunction coherent(const SpatialGrid& grid, const std::vector<double>& x0,
                      const std::vector<double>& p0, const std::vector<double>& dx,
                      double hbar = 1.0, double mass = 1.0);

/// 1D harmonic oscillator eigenstate |n> for H = p^2/2m + m w^2 x^2 / 2,
/// built with the normalized Hermite-function recurrence (stable for the
/// desk-scale n used here).
WaveFunction oscillator_eigenstate(const SpatialGrid& grid1d, int n, double mass = 1.0,
                                   double omega = 1.0, double hbar = 1.0);

struct GaussianComponent {
  double x0 = 0.0;
  double p0 = 0.0;
  double dx = 1.0;
  cplx amplitude = 1.0;
};

/// Normalized superposition of 1D Gaussian packets.
WaveFunction gaussian_superposition(const SpatialGrid& grid1d, const std::vector<GaussianComponent>& parts,
                                    double hbar = 1.0, double mass = 1.0);

/// 3D state proportional to (x + i y) e^{-r^2/2}: an eigenstate of L_z
/// (eigenvalue +hbar) and of L^2 (eigenvalue 2 hbar^2), with a node line
/// along the z axis.
WaveFunction lz_eigenstate_3d(const SpatialGrid& grid3d, double hbar = 1.0, double mass = 1.0);

}  // namespace psbohm::states
