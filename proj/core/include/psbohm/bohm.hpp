#pragma once

#include <vector>

#include "psbohm/cohen.hpp"
#include "psbohm/madelung.hpp"

namespace psbohm::bohm {

/// One atom of the guidance-flow phase-space measure: a grid node carrying
/// the local density weight and the guidance momentum dS/dx there.
struct MeasurePoint {
  double x[3] = {};
  double momentum[3] = {};
  double weight = 0.0;   // density * volume element
  std::size_t node = 0;  // linear index on xgrid
};

/// The state's phase-space measure concentrated on the guidance graph
/// p = dS/dx: positions distributed by |psi|^2, momentum deterministic at
/// each position. masked_deficit is the density weight excluded by the node
/// mask of the decomposition that produced it.
struct BohmMeasure {
  SpatialGrid xgrid;
  int dims = 1;
  double hbar = 1.0;
  double mass = 1.0;
  std::vector<MeasurePoint> points;
  double total_weight = 0.0;
  double masked_deficit = 0.0;
};

BohmMeasure bohm_measure(const madelung::MadelungFields& fields);

/// sum_i w_i exp(i(xi.x_i + eta.p_i)): the measure's characteristic function
/// at an arbitrary (xi, eta), dims entries each.
cplx characteristic_function(const BohmMeasure& m, const double* xi, const double* eta);
cplx characteristic_function(const BohmMeasure& m, double xi, double eta);

/// The state's own relabeling kernel f = N / D on the dual lattice of
/// (xgrid, pgrid), 1D:
///
///   N(xi, eta) = sum_j dens_j dx exp(i(xi x_j + eta dS/dx_j))
///   D(xi, eta) = characteristic spectrum of the Wigner distribution.
///
/// N runs over every node with dens > 0 using the raw guidance momentum
/// (mask-independent; garbage values at negligible density carry negligible
/// weight), so N(0,0) = ||psi||^2 exactly and the f(0,0) = 1 normalization
/// is a real consistency check (validated at 1e-10 before construction).
///
/// Bins with |D| below eps_denominator * max|D| cannot be divided and are
/// masked, except the whole eta = 0 row: there N and D are the same
/// functional of the density, so f = 1 identically and the row is kept
/// exact and unmasked. |f| below eps_kernel is masked on top (see
/// custom_kernel). State-moment data is attached, so polynomial symbol maps
/// work alongside the sampled ones.
cohen::CohenKernel bohm_kernel(const WaveFunction& psi, const madelung::MadelungFields& fields,
                               const SpatialGrid& pgrid, double eps_denominator = 1e-6,
                               double eps_kernel = 1e-8);

/// Moment-data-only kernel (any dimension): polynomial symbol maps exact on
/// momentum-degree <= 2, no sampled lattice.
cohen::CohenKernel kernel_moments(const WaveFunction& psi, const madelung::MadelungFields& fields);

/// Re(psi* (A psi)) / |psi|^2 at unmasked nodes, 0 at masked ones: the local
/// (conditional) value whose density average is <A>.
GridArray<double> local_expectation(const WaveFunction& psi, const ops::Action& op,
                                    const madelung::MadelungFields& fields);

/// sum_i w_i A(x_i, p_i) for a polynomial symbol (grid-coefficient terms are
/// evaluated at the point's node).
double expectation_bohm(const BohmMeasure& m, const PolySymbol& A);

/// sum_i w_i field[node_i] for a local field on xgrid.
double expectation_local(const BohmMeasure& m, const GridArray<double>& field);

/// sum_i w_i (|p_i|^2 / 2m + V(x_i) + Q(x_i)): guidance kinetic energy plus
/// classical and quantum potential. Equals <psi|H psi> up to the masked
/// deficit (the Q term restores the amplitude-gradient part of <p^2>/2m).
double energy_mean(const BohmMeasure& m, const GridArray<double>& potential,
                   const madelung::MadelungFields& fields);

/// Momentum star-eigenfunction family member theta with p *_f theta =
/// p* theta, represented by its eta-spectrum
///
///   theta^(eta) = (1/f)(0, -eta) exp(i eta p*)
///
/// on the dual lattice (p* snapped to the nearest momentum node). weights
/// holds (1/f)(0, -eta) alone (mask-zeroed), so the whole family over p*
/// is available without rebuilding.
struct MomentumStarGen {
  SpatialGrid pgrid;
  double hbar = 1.0;
  double p_star = 0.0;
  GridArray<cplx> values;    // theta(p) on pgrid
  GridArray<cplx> spectrum;  // theta^(eta) on the dual lattice
  GridArray<cplx> weights;   // (1/f)(0, -eta), 0 where masked
  GridArray<unsigned char> eta_mask;
};

/// Builds the family member for p_star. Sampled kernels must share pgrid and
/// pass a xi-independence precheck: sup over unmasked bins of
/// |f(xi, eta) - f(0, eta)| / |f(0, eta)| within xi_independence_tol (the
/// construction only makes sense for kernels constant in xi). The Wigner
/// kernel needs no samples; f == 1 gives the band-limited lattice delta.
MomentumStarGen momentum_stargenfunction(const cohen::CohenKernel& k, const SpatialGrid& pgrid,
                                         double p_star, double xi_independence_tol = 1e-6);

/// L2 residual ratio of the defining relation, evaluated spectrally:
///
///   r^(eta) = C[p theta](eta) + i (d/d eta ln f)(0, -eta) theta^(eta)
///             - p* theta^(eta)
///
/// with the log-derivative by centered differences on the eta lattice
/// (exact for log-quadratic kernels). Restricted to bins whose difference
/// stencil is unmasked; returns ||r^|| / ||theta^|| there.
double momentum_stargen_residual(const MomentumStarGen& sg, const cohen::CohenKernel& k);

struct MomentumDistribution {
  GridArray<double> folded;     // measure folded with the genfunction family
  GridArray<double> histogram;  // nearest-node binning of the raw measure
};

/// P1(p') = sum_i w_i theta_{p'}(p_i) evaluated for every node p' of
/// sg.pgrid, next to the naive histogram of the same measure. The folded
/// column reproduces the quantum momentum marginal; the histogram shows the
/// measure's actual (deterministic) momentum content.
MomentumDistribution momentum_probability(const BohmMeasure& m, const MomentumStarGen& sg);

/// Position distribution of the measure through the analogous position
/// family, chi^(xi) = (1/f)(-xi, 0) exp(i xi x'). With a sampled 1D kernel
/// the fold is evaluated spectrally; otherwise (moments-only or
/// multidimensional) f(xi, 0) = 1 holds identically and the fold reduces to
/// scattering weights onto their own nodes. Equals the density R^2 at
/// unmasked nodes either way.
GridArray<double> position_probability(const BohmMeasure& m, const cohen::CohenKernel& k);

/// Outcome probability sum_i w_i G_f(x_i, p_i) for a Weyl-side projector
/// symbol G, evaluated in the characteristic domain:
///
///   P = (2 pi)^{-2} Int M(z) conj((1/f)(-z) G^(z)) dz,
///
/// M the measure characteristic on the dual lattice. Bins where either z or
/// -z is masked are dropped (the pairing keeps the sum real). 1D sampled
/// kernels only.
double probability_bohm(const BohmMeasure& m, const PhaseSpaceFunction& G_weyl,
                        const cohen::CohenKernel& k);

}  // namespace psbohm::bohm
