#pragma once

#include <optional>
#include <stdexcept>

#include "psbohm/madelung.hpp"
#include "psbohm/phase_space.hpp"

namespace psbohm::cohen {

enum class KernelTag { wigner, bohm, custom };

/// Quadratic form in (xi, eta):
///   q = c + lx.xi + le.eta + xi.xx.xi + xi.xe.eta + eta.ee.eta
/// (second-order coefficients stored with the Taylor 1/2! absorbed).
struct QuadraticForm {
  double c = 1.0;
  double lx[3] = {};
  double le[3] = {};
  double xx[3][3] = {};
  double xe[3][3] = {};
  double ee[3][3] = {};

  double eval(const double* xi, const double* eta, int dims) const;
};

struct OccupancyReport {
  std::size_t occupied = 0;         // spectrum bins above the occupancy floor
  std::size_t masked_occupied = 0;  // of those, bins the kernel mask kills
  double fraction = 0.0;
};

/// Thrown when a kernel's invalid region overlaps occupied spectrum beyond
/// the caller's bound.
class MaskError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Cohen-class relabeling kernel f(xi, eta), normalized f(0, 0) = 1.
/// Representations, any subset of which may be present:
///
///  - sampled: f on the dual lattice of (xgrid, pgrid) (1D phase spaces),
///    with 1/f and a mask where the construction denominator or |f| itself
///    is too small to invert;
///  - taylor: quadratic Taylor data of f and 1/f about the origin, exact for
///    polynomial symbols of total degree <= 2 when f is the exponential of a
///    quadratic;
///  - moments: state-moment data realizing the quadratic-in-eta expansion of
///    this state's kernel exactly on momentum-degree <= 2 polynomials.
struct CohenKernel {
  KernelTag tag = KernelTag::wigner;
  double hbar = 1.0;

  bool has_samples = false;
  SpatialGrid xgrid, pgrid;
  GridArray<cplx> samples;
  GridArray<cplx> inverse_samples;
  GridArray<unsigned char> mask;  // 1 = invalid bin
  double masked_fraction = 0.0;

  bool has_taylor = false;
  QuadraticForm taylor_f, taylor_inv;

  std::optional<madelung::StateMoments> moments;
};

/// f == 1: every operation is the identity on its operand.
CohenKernel wigner_kernel(double hbar = 1.0);

/// f = exp(-sx xi^2 - sp eta^2) sampled on the dual lattice of (xg, pg),
/// with exact Taylor data. sx = sp = hbar/4 is the Husimi smoothing.
CohenKernel gaussian_kernel(const SpatialGrid& xg, const SpatialGrid& pg, double sx, double sp,
                            double hbar, double eps_kernel = 1e-8);

/// Sampled kernel from caller-provided values on the dual lattice of
/// (xg, pg). Validates f(0,0) = 1 within 1e-10 and masks |f| below
/// eps_kernel * |f(0,0)| on top of an optional caller mask.
CohenKernel custom_kernel(const SpatialGrid& xg, const SpatialGrid& pg, GridArray<cplx> samples,
                          double hbar, double eps_kernel = 1e-8,
                          const GridArray<unsigned char>* invalid = nullptr);

/// Distribution relabeling: multiply the characteristic spectrum of F by f
/// and transform back. Masked bins are zeroed; bins carrying spectral weight
/// above 1e-10 of the peak count as occupied, and the masked-occupied
/// fraction is reported (and checked against max_masked_fraction; throws
/// MaskError beyond it). The Wigner kernel returns its input bit-identically.
PhaseSpaceFunction to_f_distribution(const PhaseSpaceFunction& F, const CohenKernel& k,
                                     double max_masked_fraction = 0.0,
                                     OccupancyReport* report = nullptr);

/// Observable-side relabeling A -> A_f, the inverse weighting that keeps
/// pairings invariant: the characteristic spectrum is multiplied by
/// 1/f(-xi, -eta) (gridded route), or the differential realization of that
/// multiplier is applied to polynomial symbols (taylor or moments data).
WeylSymbol to_f_symbol(const WeylSymbol& A, const CohenKernel& k);

/// Inverse of to_f_symbol (multiply by f(-xi, -eta), or its realization).
WeylSymbol from_f_symbol(const WeylSymbol& A, const CohenKernel& k);

/// Star product in the f-representation: map both operands back to Weyl
/// form, star there, map the result forward.
WeylSymbol f_star(const WeylSymbol& A, const WeylSymbol& B, const CohenKernel& k);

/// Star-eigenfunction relabeling: G_f = to_f_symbol of a gridded Weyl-side
/// projector symbol (eigenvalue and normalization are preserved).
PhaseSpaceFunction f_stargenfunction(const PhaseSpaceFunction& G, const CohenKernel& k);

/// Int F_f G_f dx dp: outcome probability from f-representation pairs.
double probability_f(const PhaseSpaceFunction& F_f, const PhaseSpaceFunction& G_f);

/// The differential realization of the kernel weighting on polynomial
/// symbols, shared by to_f_symbol and the guidance-representation maps:
/// inverse=false applies the 1/f weighting (Weyl -> f), inverse=true the f
/// weighting (f -> Weyl). Exact on momentum-degree <= 2 polynomials whose
/// relevant coefficients have x-degree <= 2; throws outside that class.
PolySymbol moment_map_poly(const PolySymbol& A, const madelung::StateMoments& m, double hbar,
                           bool inverse);

}  // namespace psbohm::cohen
