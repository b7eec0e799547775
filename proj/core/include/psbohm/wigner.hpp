#pragma once

#include "psbohm/phase_space.hpp"
#include "psbohm/wavefunction.hpp"

namespace psbohm::wigner {

/// Phase-space quasi-distribution of a pure state,
///
///   F(x, p) = (2 pi hbar)^{-d} Int psi*(x - u/2) psi(x + u/2) e^{-i p.u / hbar} du,
///
/// realized with spectral half-shifts of psi and one dual transform per
/// momentum axis. pgrid must be zero-centered with step dp; the conjugate
/// separation grid then has step du = 2 pi hbar / (count * dp), and the
/// largest half-shift is hbar pi / (2 dp), which must fit inside half the
/// position span (throws otherwise; on the hbar-scaled dual grid of xgrid it
/// is exactly a quarter of the span).
///
/// The result is real up to roundoff; the imaginary residue is checked
/// against 1e-12 * max|F| and truncated. Total mass is checked against
/// ||psi||^2 at 1e-8.
PhaseSpaceFunction wigner_transform(const WaveFunction& psi, const SpatialGrid& pgrid);

/// Weyl symbols for the supported operator classes.
/// Multiplicative potential V(x): the symbol is V itself.
WeylSymbol weyl_symbol(const SpatialGrid& xg, const GridArray<double>& v, double hbar);
/// Polynomial in x and p with momentum degree <= 2: the symbol is the
/// polynomial itself (Weyl ordering on the operator side). Throws above
/// degree 2 in p.
WeylSymbol weyl_symbol(const PolySymbol& a, double hbar);
/// Angular momentum component (x cross p)_axis, 3D.
WeylSymbol weyl_symbol_angular(int axis, double hbar);
/// Total angular momentum squared: (x cross p)^2 - (3/2) hbar^2.
WeylSymbol weyl_symbol_angular_squared(double hbar);
/// Rank-one projector |phi><phi|: symbol (2 pi hbar)^d * wigner_transform(phi).
WeylSymbol weyl_symbol(const WaveFunction& phi, const SpatialGrid& pgrid);

/// <A> = Int F A dx dp (real part; the imaginary part of the quadrature is
/// roundoff for Hermitian observables).
double expectation_weyl(const PhaseSpaceFunction& F, const WeylSymbol& A);

struct ProbabilityResult {
  double value = 0.0;  // clamped to [0, 1]
  double raw = 0.0;    // unclamped quadrature
};

/// Transition probability Int F G dx dp for a projector symbol G.
ProbabilityResult probability_weyl(const PhaseSpaceFunction& F, const PhaseSpaceFunction& G);

/// Int F dp over the momentum axes -> position marginal (array over xgrid).
GridArray<double> marginal_position(const PhaseSpaceFunction& F);
/// Int F dx over the position axes -> momentum marginal (array over pgrid).
GridArray<double> marginal_momentum(const PhaseSpaceFunction& F);

double min_value(const PhaseSpaceFunction& F);

}  // namespace psbohm::wigner
