#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psbohm/gaussian_oracle.hpp"
#include "psbohm/madelung.hpp"
#include "psbohm/states.hpp"

using namespace psbohm;

namespace {

const SpatialGrid kGrid = SpatialGrid::centered(1, 20.0, 512);
const oracle::CoherentParams kPacket{0.6, 0.4, 1.0, 1.0, 1.0};

WaveFunction packet() { return states::coherent(kGrid, {0.6}, {0.4}, {1.0}); }

}  // namespace

TEST_CASE("decomposition reproduces the closed-form fields") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi);
  CHECK(f.masked_fraction > 0.0);
  CHECK(f.masked_fraction < 0.95);

  double sup_r = 0.0, sup_gp = 0.0, sup_q = 0.0;
  for (int i = 0; i < 512; ++i) {
    const auto li = static_cast<std::size_t>(i);
    if (f.masked(li)) continue;
    const double x = kGrid.coord(0, i);
    sup_r = std::max(sup_r, std::abs(f.amplitude[li] - oracle::amplitude(kPacket, x)));
    sup_gp = std::max(sup_gp, std::abs(f.grad_phase[0][li] - oracle::grad_phase(kPacket)));
    sup_q = std::max(sup_q, std::abs(f.quantum_potential[li] - oracle::quantum_potential(kPacket, x)));
  }
  CHECK(sup_r < 1e-10);
  CHECK(sup_gp < 1e-6);
  CHECK(sup_q < 1e-6);
}

TEST_CASE("reconstructed action differences match the closed form") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi);
  // S is defined up to one global constant; compare differences against the
  // linear closed form p0 * x.
  int ref = -1;
  double sup = 0.0;
  for (int i = 0; i < 512; ++i) {
    if (f.masked(static_cast<std::size_t>(i))) continue;
    if (ref < 0) ref = i;
    const double ds = f.phase[static_cast<std::size_t>(i)] - f.phase[static_cast<std::size_t>(ref)];
    const double want = kPacket.p0 * (kGrid.coord(0, i) - kGrid.coord(0, ref));
    sup = std::max(sup, std::abs(ds - want));
  }
  CHECK(sup < 1e-8);
}

TEST_CASE("quantum potential mean has the closed value") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi, {1e-9});
  CHECK(madelung::quantum_potential_mean(f) ==
        doctest::Approx(oracle::quantum_potential_mean(kPacket)).epsilon(1e-7));
}

TEST_CASE("log-derivative route agrees with the amplitude route") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi);
  const GridArray<double> q2 = madelung::quantum_potential_log_route(psi, f);
  double sup = 0.0;
  for (std::size_t i = 0; i < q2.size(); ++i) {
    if (f.masked(i)) continue;
    sup = std::max(sup, std::abs(q2[i] - f.quantum_potential[i]));
  }
  CHECK(sup < 1e-6);
}

TEST_CASE("quantum potential gradient matches the closed form") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi);
  const GridArray<double> g = madelung::quantum_potential_gradient_1d(psi, f);
  double sup = 0.0;
  for (int i = 0; i < 512; ++i) {
    const auto li = static_cast<std::size_t>(i);
    if (f.masked(li)) continue;
    sup = std::max(sup, std::abs(g[li] - oracle::quantum_potential_gradient(kPacket, kGrid.coord(0, i))));
  }
  CHECK(sup < 1e-6);
}

TEST_CASE("decomposition guards") {
  WaveFunction psi = packet();
  for (auto& v : psi.samples) v = 0.0;
  CHECK_THROWS_AS(madelung::decompose(psi), std::invalid_argument);
  // masking everything must also be rejected
  CHECK_THROWS_AS(madelung::decompose(packet(), {1.5}), std::invalid_argument);
}

TEST_CASE("excited states carry interior masked nodes") {
  const WaveFunction psi = states::oscillator_eigenstate(kGrid, 1);
  const madelung::MadelungFields f = madelung::decompose(psi, {1e-10});
  // the node at the origin is masked, its neighborhood survives
  CHECK(f.masked(256));
  CHECK(!f.masked(230));
  CHECK(!f.masked(282));
}

TEST_CASE("state moments of a Gaussian packet have closed values") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi, {1e-9});
  const madelung::StateMoments m = madelung::state_moments(psi, f);
  // ln R curvature is the constant -1/(2 dx^2)
  CHECK(m.g0[0][0] == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(m.mu1[0] == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(m.mu2[0][0] - m.mu1[0] * m.mu1[0] == doctest::Approx(1.0).epsilon(1e-7));
  // curvature is constant, so its x-weighted moments factor through mu
  CHECK(m.g1[0][0][0] == doctest::Approx(m.mu1[0] * m.g0[0][0]).epsilon(1e-8));
  CHECK(m.g2[0][0][0][0] == doctest::Approx(m.mu2[0][0] * m.g0[0][0]).epsilon(1e-7));
}

TEST_CASE("hydrodynamic residuals vanish on exact evolution snapshots") {
  // shape-preserving packet in the unit harmonic well
  const double w = std::sqrt(0.5);
  const oracle::CoherentParams c{1.0, 0.5, w, 1.0, 1.0};
  auto at = [&](double t) {
    const oracle::WellState s = oracle::harmonic_evolution(c, 1.0, t);
    WaveFunction psi = states::coherent(kGrid, {s.x}, {s.p}, {s.width});
    // restore the dynamical global phase the fixed-convention constructor drops
    const double gamma = 0.5 * (c.x0 * c.p0 - s.x * s.p) - 0.5 * t;
    const cplx ph = std::exp(cplx(0.0, gamma));
    for (auto& z : psi.samples) z *= ph;
    return psi;
  };
  GridArray<double> v({512});
  for (int i = 0; i < 512; ++i) {
    const double x = kGrid.coord(0, i);
    v[static_cast<std::size_t>(i)] = 0.5 * x * x;
  }
  const double dt = 1e-3;
  const madelung::ResidualPair r = madelung::madelung_residuals(at(-dt), at(0.0), at(dt), dt, v);
  // O(dt^2) centered differences on exact snapshots
  CHECK(r.continuity < 5e-6);
  CHECK(r.hamilton_jacobi < 5e-6);
}
