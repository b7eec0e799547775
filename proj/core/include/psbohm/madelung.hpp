#pragma once

#include <vector>

#include "psbohm/grid.hpp"
#include "psbohm/wavefunction.hpp"

namespace psbohm::madelung {

/// Hydrodynamic decomposition psi = R e^{iS/hbar}: amplitude, action, guidance
/// momentum field dS/dx, and the quantum potential
///
///   Q = -(hbar^2 / 2m) (laplacian R) / R.
///
/// Points where the density falls below eps_node * max(density) are masked:
/// Q has a 1/R singularity at nodes, and every field is set to 0 there.
/// Quadratures and residuals skip masked points and report the masked
/// fraction.
struct MadelungFields {
  SpatialGrid grid;
  double hbar = 1.0;
  double mass = 1.0;
  GridArray<double> amplitude;          // R
  GridArray<double> density;            // R^2
  GridArray<double> phase;              // S, line-integrated (see decompose)
  GridArray<double> quantum_potential;  // Q
  std::vector<GridArray<double>> grad_phase;  // dS/dx_a per axis
  GridArray<unsigned char> node_mask;         // 1 = masked (near-node)
  double masked_fraction = 0.0;

  int dims() const { return grid.dims(); }
  bool masked(std::size_t lin) const { return node_mask[lin] != 0; }
};

struct MadelungOptions {
  double eps_node = 1e-6;  // mask where density < eps_node * max(density)
};

/// Decompose a normalized wave function.
///
/// grad_phase is hbar Im(psi* grad psi)/|psi|^2 with spectral derivatives (no
/// phase unwrapping). S is reconstructed by trapezoid line integration of
/// grad_phase: in 1D from the leftmost unmasked node, in 2D/3D along
/// axis-ordered paths from the highest-density node. The anchor value is
/// hbar arg(psi(anchor)), so a global phase e^{i a} shifts S by the constant
/// hbar a (mod 2 pi hbar). For states with nodes the reconstruction is
/// path-dependent; this routine masks and reports, nothing more.
///
/// Throws: psi identically zero, or nearly the whole grid masked (fewer than
/// 16 surviving nodes or above 99 percent masked). Localized packets on
/// generous boxes mask large fractions legitimately.
MadelungFields decompose(const WaveFunction& psi, const MadelungOptions& opt = {});

/// Quadrature of density * Q over unmasked points.
double quantum_potential_mean(const MadelungFields& f);

/// Q recomputed from log-derivatives of psi itself,
///   Q = -(hbar^2/2m) (Re l2 + sum_a (Re l1_a)^2),  l1 = grad psi/psi,
///   l2 = laplacian psi/psi - sum_a l1_a^2,
/// which never differentiates the non-smooth R. Cross-check for the
/// laplacian-of-R route used by decompose; masked points are 0.
GridArray<double> quantum_potential_log_route(const WaveFunction& psi, const MadelungFields& f);

/// dQ/dx for 1D states from third-order log derivatives of psi. Differentiating
/// the masked Q grid spectrally would ring at the mask edge; this route stays
/// accurate on the whole unmasked window. Masked points are 0.
GridArray<double> quantum_potential_gradient_1d(const WaveFunction& psi, const MadelungFields& f);

struct ResidualPair {
  double continuity;       // sup |d_t density + div(density gradS / m)|
  double hamilton_jacobi;  // sup |d_t S + |gradS|^2/2m + V + Q|
};

/// Residuals of the two hydrodynamic evolution equations on three consecutive
/// snapshots spaced dt apart, centered at `middle`. Time derivatives are
/// second-order centered differences; spatial derivatives are spectral on
/// smooth combinations (the current hbar Im(psi* grad psi)/m, never masked
/// fields). S branches are aligned across snapshots by the 2 pi hbar multiple
/// that matches them at the reference node before differencing.
ResidualPair madelung_residuals(const WaveFunction& psi_before, const WaveFunction& psi_middle,
                                const WaveFunction& psi_after, double dt,
                                const GridArray<double>& potential,
                                const MadelungOptions& opt = {});

/// Density-weighted moments of the log-amplitude Hessian g_ab = d_a d_b ln R,
/// computed from smooth psi-derivative ratios
///   g_ab = Re( d_a d_b psi / psi - (d_a psi/psi)(d_b psi/psi) )
/// over unmasked points, with <.> = (sum density dV .)/(sum density dV):
///
///   g0[a][b]       = <g_ab>
///   g1[k][a][b]    = <x_k g_ab>
///   g2[k][l][a][b] = <x_k x_l g_ab>
///   mu1[k]         = <x_k>,  mu2[k][l] = <x_k x_l>
///
/// This is the data the quadratic-in-eta expansion of the kernel consumes
/// (see cohen/bohm modules).
struct StateMoments {
  int dims = 1;
  double hbar = 1.0;
  double mass = 1.0;
  double masked_fraction = 0.0;
  double g0[3][3] = {};
  double g1[3][3][3] = {};
  double g2[3][3][3][3] = {};
  double mu1[3] = {};
  double mu2[3][3] = {};
};

StateMoments state_moments(const WaveFunction& psi, const MadelungFields& f);

}  // namespace psbohm::madelung
