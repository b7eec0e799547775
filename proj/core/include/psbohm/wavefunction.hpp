#pragma once

#include <functional>

#include "psbohm/fourier.hpp"
#include "psbohm/grid.hpp"

namespace psbohm {

/// Complex wavefunction sampled on a SpatialGrid, tagged with hbar and mass.
/// Physical states are expected to be normalized (L2 norm 1 under grid
/// quadrature) and to satisfy declared support: |psi| at every boundary face
/// below decay_threshold * max|psi|, so spectral shifts and derivatives are
/// trustworthy.
struct WaveFunction {
  SpatialGrid grid;
  GridArray<cplx> samples;
  double hbar = 1.0;
  double mass = 1.0;

  int dims() const { return grid.dims(); }

  double norm() const;
  /// Scales to unit norm; throws if the norm is zero (identically-zero input).
  void normalize();

  /// max over boundary-face samples of |psi| / max|psi|.
  double boundary_decay() const;
  bool support_ok(double decay_threshold = 1e-8) const;
};

/// Momentum-space representation: phi(p) on the hbar-scaled dual grid,
/// phi(p) = (2*pi*hbar)^{-d/2} Int psi(x) e^{-i p.x/hbar} dx.
/// Int |phi|^2 dp = Int |psi|^2 dx holds to roundoff.
struct MomentumRepresentation {
  SpatialGrid pgrid;
  GridArray<cplx> samples;
};
MomentumRepresentation momentum_representation(const WaveFunction& psi);

/// The hbar-scaled dual grid used by momentum_representation (p = hbar * k).
SpatialGrid momentum_grid(const SpatialGrid& xgrid, double hbar);

/// Operators as actions psi -> A psi on sampled states. Derivatives are
/// spectral. These are the reference realizations used for expectation
/// cross-checks and eigen-residuals throughout the library.
namespace ops {

using Action = std::function<GridArray<cplx>(const WaveFunction&)>;

Action multiply(GridArray<double> values);
/// -i hbar d/dx_axis
Action momentum(int axis);
/// -(hbar^2 / 2m) laplacian
Action kinetic();
/// kinetic() + multiply(potential)
Action hamiltonian(GridArray<double> potential);
/// (x cross (-i hbar grad))_axis, 3D only
Action angular_momentum(int axis);
/// L_x^2 + L_y^2 + L_z^2, 3D only
Action angular_momentum_squared();

/// <psi | A psi> under grid quadrature.
cplx expectation(const WaveFunction& psi, const Action& op);
/// || A psi - a psi || / || psi ||
double eigen_residual(const WaveFunction& psi, const Action& op, double eigenvalue);

}  // namespace ops

}  // namespace psbohm
