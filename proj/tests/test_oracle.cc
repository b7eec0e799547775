#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "psbohm/gaussian_oracle.hpp"

using namespace psbohm;

// Internal-consistency checks of the closed forms against direct Riemann
// sums and finite differences. Nothing from the spectral pipeline is used:
// these anchor everything else, so they are validated standalone.

namespace {

const oracle::CoherentParams kC{0.8, -0.5, 0.7, 1.0, 1.3};

template <typename F>
double rsum(F f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += f(lo + (i + 0.5) * h);
  return acc * h;
}

template <typename F>
cplx rsumc(F f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i) acc += f(lo + (i + 0.5) * h);
  return acc * h;
}

}  // namespace

TEST_CASE("density is the squared wave amplitude and normalizes") {
  for (double x : {-1.0, 0.3, 0.8, 2.5})
    CHECK(oracle::position_density(kC, x) ==
          doctest::Approx(std::norm(oracle::psi(kC, x))).epsilon(1e-13));
  const double mass = rsum([&](double x) { return oracle::position_density(kC, x); }, -8, 10, 20000);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  const double pmass = rsum([&](double p) { return oracle::momentum_density(kC, p); }, -8, 8, 20000);
  CHECK(pmass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("wave phase is linear with slope p0 over hbar") {
  for (double x : {-0.4, 0.2, 1.1}) {
    const cplx r = oracle::psi(kC, x + 1e-5) / oracle::psi(kC, x);
    CHECK(std::arg(r) / 1e-5 == doctest::Approx(kC.p0 / kC.hbar).epsilon(1e-6));
  }
}

TEST_CASE("phase-space form integrates to the stated marginals") {
  for (double x : {0.2, 0.8, 1.7}) {
    const double got = rsum([&](double p) { return oracle::wigner(kC, x, p); }, -8, 7, 40000);
    CHECK(got == doctest::Approx(oracle::position_density(kC, x)).epsilon(1e-10));
  }
  for (double p : {-1.2, -0.5, 0.4}) {
    const double got = rsum([&](double x) { return oracle::wigner(kC, x, p); }, -7, 9, 40000);
    CHECK(got == doctest::Approx(oracle::momentum_density(kC, p)).epsilon(1e-10));
  }
}

TEST_CASE("spectrum is the double transform of the phase-space form") {
  for (double xi : {0.0, 0.6})
    for (double eta : {0.0, -0.9}) {
      const cplx got = rsumc(
          [&](double x) {
            return rsumc(
                [&](double p) {
                  return oracle::wigner(kC, x, p) * std::polar(1.0, xi * x + eta * p);
                },
                -8, 7, 2000);
          },
          -7, 9, 2000);
      CHECK(std::abs(got - oracle::spectrum(kC, xi, eta)) < 1e-8);
    }
}

TEST_CASE("measure spectrum transforms the weighted point measure") {
  for (double xi : {0.0, 0.6, -1.1})
    for (double eta : {0.0, 0.8}) {
      const cplx got = rsumc(
          [&](double x) {
            return oracle::position_density(kC, x) *
                   std::polar(1.0, xi * x + eta * oracle::grad_phase(kC));
          },
          -8, 10, 40000);
      CHECK(std::abs(got - oracle::measure_spectrum(kC, xi, eta)) < 1e-10);
    }
}

TEST_CASE("relabeling kernel is the spectrum ratio and inverts cleanly") {
  for (double xi : {0.0, 0.4, -0.9})
    for (double eta : {0.0, 0.7, 1.8}) {
      const cplx ratio = oracle::measure_spectrum(kC, xi, eta) / oracle::spectrum(kC, xi, eta);
      CHECK(std::abs(ratio - oracle::kernel(kC, eta)) < 1e-12);
      CHECK(oracle::kernel(kC, eta) * oracle::kernel_inverse(kC, eta) ==
            doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("internal potential matches curvature differences of the amplitude") {
  const double h = 1e-4;
  for (double x : {-0.2, 0.8, 1.9}) {
    const double rpp = (oracle::amplitude(kC, x + h) - 2.0 * oracle::amplitude(kC, x) +
                        oracle::amplitude(kC, x - h)) /
                       (h * h);
    const double want = -kC.hbar * kC.hbar / (2.0 * kC.mass) * rpp / oracle::amplitude(kC, x);
    CHECK(oracle::quantum_potential(kC, x) == doctest::Approx(want).epsilon(1e-6));
  }
  for (double x : {-0.2, 1.9}) {
    const double fd = (oracle::quantum_potential(kC, x + h) - oracle::quantum_potential(kC, x - h)) / (2.0 * h);
    CHECK(oracle::quantum_potential_gradient(kC, x) == doctest::Approx(fd).epsilon(1e-8));
  }
  const double mean =
      rsum([&](double x) { return oracle::position_density(kC, x) * oracle::quantum_potential(kC, x); },
           -8, 10, 40000);
  CHECK(oracle::quantum_potential_mean(kC) == doctest::Approx(mean).epsilon(1e-10));
}

TEST_CASE("momentum variance matches its quadrature") {
  const double var = rsum(
      [&](double p) {
        return oracle::momentum_density(kC, p) * (p - kC.p0) * (p - kC.p0);
      },
      -9, 8, 40000);
  CHECK(oracle::momentum_variance(kC) == doctest::Approx(var).epsilon(1e-10));
}

TEST_CASE("momentum outcome profile normalizes and folds exactly") {
  const double mass = rsum([&](double p) { return oracle::momentum_stargen(kC, p, 0.3); }, -8, 8, 40000);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
  // the point measure at p0 smeared by the profile is the momentum density
  for (double pp : {-1.3, -0.5, 0.2})
    CHECK(oracle::momentum_probability(kC, pp) ==
          doctest::Approx(oracle::momentum_density(kC, pp)).epsilon(1e-13));
}

TEST_CASE("well evolution obeys the classical equations and returns") {
  const double om = 1.4;
  const double h = 1e-5;
  for (double t : {0.3, 1.2}) {
    const oracle::WellState a = oracle::harmonic_evolution(kC, om, t - h);
    const oracle::WellState s = oracle::harmonic_evolution(kC, om, t);
    const oracle::WellState b = oracle::harmonic_evolution(kC, om, t + h);
    CHECK((b.x - a.x) / (2 * h) == doctest::Approx(s.p / kC.mass).epsilon(1e-8));
    CHECK((b.p - a.p) / (2 * h) == doctest::Approx(-kC.mass * om * om * s.x).epsilon(1e-8));
  }
  const oracle::WellState t0 = oracle::harmonic_evolution(kC, om, 0.0);
  CHECK(t0.x == kC.x0);
  CHECK(t0.p == kC.p0);
  CHECK(t0.width == doctest::Approx(kC.dx).epsilon(1e-14));
  const oracle::WellState tp = oracle::harmonic_evolution(kC, om, 2.0 * M_PI / om);
  CHECK(tp.x == doctest::Approx(kC.x0).epsilon(1e-12));
  CHECK(tp.p == doctest::Approx(kC.p0).epsilon(1e-12));
  CHECK(tp.width == doctest::Approx(kC.dx).epsilon(1e-12));
  // matched width stays constant
  oracle::CoherentParams cm = kC;
  cm.dx = std::sqrt(kC.hbar / (2.0 * kC.mass * om));
  CHECK(oracle::harmonic_evolution(cm, om, 0.77).width == doctest::Approx(cm.dx).epsilon(1e-13));
}

TEST_CASE("free spreading starts at the packet width and grows") {
  CHECK(oracle::free_width(kC, 0.0) == kC.dx);
  CHECK(oracle::free_width(kC, 1.0) > kC.dx);
  CHECK(oracle::free_width(kC, 2.0) > oracle::free_width(kC, 1.0));
  // long-time rate hbar t / (2 m dx)
  const double t = 400.0;
  CHECK(oracle::free_width(kC, t) ==
        doctest::Approx(kC.hbar * t / (2.0 * kC.mass * kC.dx)).epsilon(1e-4));
}

TEST_CASE("ladder energies") {
  CHECK(oracle::oscillator_energy(0, 1.0, 1.0) == 0.5);
  CHECK(oracle::oscillator_energy(3, 2.0, 0.5) == 3.5);
}
