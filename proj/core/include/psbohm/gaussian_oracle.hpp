#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "psbohm/grid.hpp"

/// Closed-form results for the 1D Gaussian wave packet
///
///   psi(x) = (2 pi dx^2)^{-1/4} exp[-(x - x0)^2/(4 dx^2) + i p0 x / hbar]
///
/// evaluated directly from analytic formulas. Nothing here touches grids or
/// spectral transforms: these functions are the trust anchor the numerical
/// pipeline is tested against, so they must not share code with it.
namespace psbohm::oracle {

struct CoherentParams {
  double x0 = 0.0;
  double p0 = 0.0;
  double dx = 1.0;
  double hbar = 1.0;
  double mass = 1.0;
};

inline cplx psi(const CoherentParams& c, double x) {
  const double u = x - c.x0;
  const double amp = std::pow(2.0 * std::numbers::pi * c.dx * c.dx, -0.25) *
                     std::exp(-u * u / (4.0 * c.dx * c.dx));
  return std::polar(amp, c.p0 * x / c.hbar);
}

inline double position_density(const CoherentParams& c, double x) {
  const double u = x - c.x0;
  return std::exp(-u * u / (2.0 * c.dx * c.dx)) / std::sqrt(2.0 * std::numbers::pi * c.dx * c.dx);
}

inline double amplitude(const CoherentParams& c, double x) { return std::abs(psi(c, x)); }

/// S(x) = p0 x; the phase gradient is p0 everywhere.
inline double phase(const CoherentParams& c, double x) { return c.p0 * x; }
inline double grad_phase(const CoherentParams& c) { return c.p0; }

/// Q(x) = hbar^2/(4 m dx^2) - hbar^2 (x - x0)^2 / (8 m dx^4).
inline double quantum_potential(const CoherentParams& c, double x) {
  const double u = x - c.x0;
  const double h2m = c.hbar * c.hbar / c.mass;
  return h2m / (4.0 * c.dx * c.dx) - h2m * u * u / (8.0 * std::pow(c.dx, 4));
}

inline double quantum_potential_gradient(const CoherentParams& c, double x) {
  return -c.hbar * c.hbar * (x - c.x0) / (4.0 * c.mass * std::pow(c.dx, 4));
}

/// <Q> = hbar^2 / (8 m dx^2); also the momentum variance over 2m.
inline double quantum_potential_mean(const CoherentParams& c) {
  return c.hbar * c.hbar / (8.0 * c.mass * c.dx * c.dx);
}

inline double momentum_variance(const CoherentParams& c) {
  return c.hbar * c.hbar / (4.0 * c.dx * c.dx);
}

inline double momentum_density(const CoherentParams& c, double p) {
  const double v = p - c.p0;
  const double s2 = momentum_variance(c);
  return std::exp(-v * v / (2.0 * s2)) / std::sqrt(2.0 * std::numbers::pi * s2);
}

/// Phase-space quasi-distribution of the packet: unit-normalized Gaussian
/// (1/(pi hbar)) exp[-(x-x0)^2/(2 dx^2) - 2 dx^2 (p-p0)^2/hbar^2].
inline double wigner(const CoherentParams& c, double x, double p) {
  const double u = x - c.x0;
  const double v = p - c.p0;
  return std::exp(-u * u / (2.0 * c.dx * c.dx) - 2.0 * c.dx * c.dx * v * v / (c.hbar * c.hbar)) /
         (std::numbers::pi * c.hbar);
}

/// Double Fourier transform of wigner() with kernel e^{+i(xi x + eta p)}:
/// e^{i(xi x0 + eta p0)} e^{-dx^2 xi^2/2 - hbar^2 eta^2/(8 dx^2)}. Value 1 at
/// the origin.
inline cplx spectrum(const CoherentParams& c, double xi, double eta) {
  const double mag = std::exp(-c.dx * c.dx * xi * xi / 2.0 -
                              c.hbar * c.hbar * eta * eta / (8.0 * c.dx * c.dx));
  return std::polar(mag, xi * c.x0 + eta * c.p0);
}

/// Weighted-point-measure transform Int R^2 e^{i(eta dS/dx + xi x)} dx:
/// e^{i(xi x0 + eta p0)} e^{-dx^2 xi^2/2}.
inline cplx measure_spectrum(const CoherentParams& c, double xi, double eta) {
  return std::polar(std::exp(-c.dx * c.dx * xi * xi / 2.0), xi * c.x0 + eta * c.p0);
}

/// The ratio measure_spectrum / spectrum: e^{hbar^2 eta^2/(8 dx^2)},
/// independent of xi.
inline double kernel(const CoherentParams& c, double eta) {
  return std::exp(c.hbar * c.hbar * eta * eta / (8.0 * c.dx * c.dx));
}

inline double kernel_inverse(const CoherentParams& c, double eta) {
  return std::exp(-c.hbar * c.hbar * eta * eta / (8.0 * c.dx * c.dx));
}

/// Momentum projector profile after the inverse-kernel multiplier: a Gaussian
/// sqrt(2 dx^2/(pi hbar^2)) e^{-2 dx^2 (p - p_prime)^2 / hbar^2} replacing the
/// sharp delta; same variance as the momentum density.
inline double momentum_stargen(const CoherentParams& c, double p, double p_prime) {
  const double v = p - p_prime;
  return std::sqrt(2.0 * c.dx * c.dx / (std::numbers::pi * c.hbar * c.hbar)) *
         std::exp(-2.0 * c.dx * c.dx * v * v / (c.hbar * c.hbar));
}

/// Folded momentum probability: the point measure (all momenta p0) smeared by
/// momentum_stargen, which reproduces the true momentum density exactly.
inline double momentum_probability(const CoherentParams& c, double p_prime) {
  return momentum_stargen(c, p_prime, c.p0);
}

/// Classical center motion and width of the packet inside the harmonic well
/// V = m omega^2 x^2 / 2. The width is constant when dx^2 = hbar/(2 m omega).
struct WellState {
  double x;
  double p;
  double width;
};

inline WellState harmonic_evolution(const CoherentParams& c, double omega, double t) {
  WellState s;
  s.x = c.x0 * std::cos(omega * t) + c.p0 / (c.mass * omega) * std::sin(omega * t);
  s.p = c.p0 * std::cos(omega * t) - c.mass * omega * c.x0 * std::sin(omega * t);
  const double ground = c.hbar / (2.0 * c.mass * omega);
  const double cs = std::cos(omega * t), sn = std::sin(omega * t);
  s.width = std::sqrt(c.dx * c.dx * cs * cs + ground * ground / (c.dx * c.dx) * sn * sn);
  return s;
}

inline double free_width(const CoherentParams& c, double t) {
  const double spread = c.hbar * t / (2.0 * c.mass * c.dx * c.dx);
  return c.dx * std::sqrt(1.0 + spread * spread);
}

inline double oscillator_energy(int n, double omega, double hbar) {
  return hbar * omega * (n + 0.5);
}

}  // namespace psbohm::oracle
