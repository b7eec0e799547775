#pragma once

#include <vector>

#include "psbohm/bohm.hpp"
#include "psbohm/moyal.hpp"

namespace psbohm::dynamics {

/// Multiplicative potential with analytic gradients. Differentiating a
/// sampled V spectrally would ring for non-periodic data; the factories fill
/// closed-form gradient fields instead. poly is present when the potential
/// has an exact polynomial symbol (free, harmonic, from_poly).
struct Potential {
  SpatialGrid grid;
  GridArray<double> values;
  std::vector<GridArray<double>> gradient;
  PolySymbol poly;
  bool has_poly = false;
};

Potential free_particle(const SpatialGrid& g);
/// (m omega^2 / 2) |x - center|^2; center defaults to the origin.
Potential harmonic(const SpatialGrid& g, double mass, double omega,
                   const std::vector<double>& center = {});
/// Momentum-degree-0 polynomial sampled onto the grid (gradients from the
/// derivative polynomials).
Potential potential_from_poly(const SpatialGrid& g, const PolySymbol& v);

struct PropagatorConfig {
  double dt = 1e-3;
  int steps = 1;
  int sample_every = 0;  // 0: keep initial and final only
  double support_threshold = 1e-8;
};

/// Strang-split propagation exp(-i H dt/hbar) ~ half-V, full kinetic
/// (spectral), half-V. Norm is conserved exactly. Throws before starting if
/// the largest kinetic phase per step reaches pi (|dt| hbar (pi/dx)^2 / 2m
/// summed over axes), and mid-run with the step index if the state's
/// boundary decay rises above support_threshold. Negative dt propagates
/// backward. Snapshots: step 0, every sample_every-th step, and the final
/// step.
std::vector<WaveFunction> propagate(const WaveFunction& psi, const Potential& V,
                                    const PropagatorConfig& cfg);

/// || (F2 - F0)/(2 dt) - (H * F1 - F1 * H)/(i hbar) ||_2 over the phase-space
/// box: second-order-in-time residual of the phase-space evolution equation
/// on three snapshots dt apart.
double moyal_residual(const PhaseSpaceFunction& F0, const PhaseSpaceFunction& F1,
                      const PhaseSpaceFunction& F2, const WeylSymbol& H, double dt);

struct TransportSample {
  double xi = 0.0;
  double eta = 0.0;
};

/// Residual of the guidance-measure transport law at selected (xi, eta):
///
///   d/dt M(xi, eta) = sum_j w_j (i xi p_j / m - i eta (V' + Q')_j)
///                     e^{i(xi x_j + eta p_j)},
///
/// p_j the raw guidance momentum of each snapshot, the time derivative a
/// centered difference of the measure characteristic. All three sums run
/// over the middle snapshot's unmasked set, so the compared quantities see
/// one common point set. Returns the max abs deviation over samples. 1D.
double transport_residual(const WaveFunction& before, const WaveFunction& middle,
                          const WaveFunction& after, double dt, const Potential& V,
                          const std::vector<TransportSample>& samples,
                          const madelung::MadelungOptions& opt = {});

/// Observable-side (fixed-measure) evolution in the kernel's representation:
/// the symbol obeys
///
///   dA~/dt = M_f { M_f^{-1} A~ , H }  (Poisson bracket),
///
/// integrated by RK4 from the mapped A_weyl. Exact (up to the integrator)
/// for quadratic H, where the bracket equals the full evolution on
/// degree <= 2 symbols. Returns steps+1 symbols including the initial one.
std::vector<PolySymbol> evolve_symbol(const PolySymbol& A_weyl, const PolySymbol& H_weyl,
                                      const cohen::CohenKernel& k, double dt, int steps);

struct RateCheck {
  double lhs = 0.0;  // five-point time derivative of the operator expectation
  double rhs = 0.0;  // measure-side transport rate
};

/// d<A>/dt two ways: lhs propagates psi to +-dt, +-2dt (eight Strang
/// substeps each) and differences the operator expectations; rhs folds the
/// guidance measure with {A~, H} - dA~/dp Q'. Agreement is the pointwise
/// test that the measure transports expectations correctly. 1D, polynomial
/// potentials.
RateCheck expectation_rate_check(const PolySymbol& A_weyl, const WaveFunction& psi,
                                 const Potential& V, double dt, const cohen::CohenKernel& k,
                                 const madelung::MadelungOptions& opt = {});

/// <psi| op(A) |psi> for a 1D polynomial symbol of momentum degree <= 2,
/// with the symmetrized operator ordering the phase-space calculus maps to:
///   x^a:     Int |psi|^2 x^a
///   x^a p:   Re <psi| x^a p psi>
///   x^a p^2: (Re <psi| x^a p^2 psi> + <p psi| x^a p psi>) / 2
double expectation_schrodinger(const WaveFunction& psi, const PolySymbol& A_weyl);

}  // namespace psbohm::dynamics
