#pragma once

#include <string>

#include "psbohm/phase_space.hpp"
#include "psbohm/wavefunction.hpp"

namespace psbohm::moyal {

/// Star product A * B. The route is chosen by operand form:
///
///  - polynomial * polynomial: the terminating bidifferential series
///    sum_n (i hbar / 2)^n / n! J^n (A (x) B) with
///    J = sum_d (d_x (x) d_p - d_p (x) d_x); throws if the combined momentum
///    degree exceeds 4 (the supported exactly-terminating regime).
///  - polynomial * gridded (either order): same series; the polynomial side's
///    degrees bound the depth, grid-side derivatives are spectral. A
///    polynomial carrying grid coefficients is first sampled onto the lattice
///    and handled below (its x-derivatives would not terminate).
///  - gridded * gridded: twisted convolution of the characteristic spectra,
///    C[A*B](z) = (2 pi)^{-2} Int A^(z1) B^(z - z1) e^{-(i hbar/2)(xi1 eta - eta1 xi)} dz1,
///    zero-truncated outside the lattice; 1D phase spaces only, O(M^2).
///
/// Both operands must share hbar (and grids where gridded).
WeylSymbol moyal_star(const WeylSymbol& A, const WeylSymbol& B);

/// [A, B] = A * B - B * A.
WeylSymbol moyal_bracket(const WeylSymbol& A, const WeylSymbol& B);

/// ||A * G - a G||_2 / ||G||_2 over the phase-space box.
double stargen_residual(const WeylSymbol& A, const PhaseSpaceFunction& G, double eigenvalue);

/// A distinguished symbol G with A * G = a G (left star-eigenfunction),
/// normalized so that Int F G dx dp is the probability of outcome a.
struct StarGenFunction {
  PhaseSpaceFunction symbol;
  double eigenvalue = 0.0;
  std::string tag;
};

/// Projector construction: for a state phi with op phi = a phi (residual
/// checked against residual_tol, throws when violated), the symbol is
/// (2 pi hbar)^d times the phase-space distribution of phi.
StarGenFunction stargenfunction_projector(const WaveFunction& eigenstate, const ops::Action& op,
                                          double eigenvalue, const SpatialGrid& pgrid,
                                          double residual_tol = 1e-6, std::string tag = {});

}  // namespace psbohm::moyal
