#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psbohm/gaussian_oracle.hpp"
#include "psbohm/states.hpp"
#include "psbohm/wigner.hpp"

using namespace psbohm;

namespace {

const SpatialGrid kX = SpatialGrid::centered(1, 20.0, 512);
const SpatialGrid kP = momentum_grid(kX, 1.0);

PhaseSpaceFunction packet_distribution(const oracle::CoherentParams& c) {
  const WaveFunction psi = states::coherent(kX, {c.x0}, {c.p0}, {c.dx});
  return wigner::wigner_transform(psi, kP);
}

}  // namespace

TEST_CASE("Gaussian packet reproduces the closed phase-space form") {
  const oracle::CoherentParams c{0.6, 0.4, 1.0, 1.0, 1.0};
  const PhaseSpaceFunction F = packet_distribution(c);
  double sup = 0.0;
  for (int i = 0; i < 512; ++i)
    for (int j = 0; j < 512; ++j) {
      const double want = oracle::wigner(c, kX.coord(0, i), kP.coord(0, j));
      const cplx got = F.samples[F.samples.index({i, j})];
      sup = std::max(sup, std::abs(got - want));
    }
  CHECK(sup < 1e-8);
}

TEST_CASE("marginals recover the position and momentum densities") {
  const oracle::CoherentParams c{-0.3, 0.7, 0.8, 1.0, 1.0};
  const PhaseSpaceFunction F = packet_distribution(c);
  const GridArray<double> mx = wigner::marginal_position(F);
  const GridArray<double> mp = wigner::marginal_momentum(F);
  double sup_x = 0.0, sup_p = 0.0;
  for (int i = 0; i < 512; ++i) {
    sup_x = std::max(sup_x, std::abs(mx[static_cast<std::size_t>(i)] - oracle::position_density(c, kX.coord(0, i))));
    sup_p = std::max(sup_p, std::abs(mp[static_cast<std::size_t>(i)] - oracle::momentum_density(c, kP.coord(0, i))));
  }
  CHECK(sup_x < 1e-8);
  CHECK(sup_p < 1e-8);
  CHECK(quadrature2(F.xgrid, F.pgrid, F.samples).real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("first excited state dips negative at the origin") {
  const WaveFunction psi = states::oscillator_eigenstate(kX, 1);
  const PhaseSpaceFunction F = wigner::wigner_transform(psi, kP);
  // W(0,0) = -1/(pi hbar) for the n=1 oscillator state
  CHECK(wigner::min_value(F) == doctest::Approx(-1.0 / M_PI).epsilon(1e-6));
}

TEST_CASE("polynomial expectations match moment closed forms") {
  const oracle::CoherentParams c{0.6, 0.4, 1.0, 1.0, 1.0};
  const PhaseSpaceFunction F = packet_distribution(c);
  auto mono = [](int xp, int pp) {
    return WeylSymbol(PolySymbol::monomial_1d(xp, pp, 1.0), 1.0);
  };
  CHECK(wigner::expectation_weyl(F, mono(1, 0)) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(wigner::expectation_weyl(F, mono(0, 1)) == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(wigner::expectation_weyl(F, mono(2, 0)) == doctest::Approx(1.0 + 0.36).epsilon(1e-9));
  CHECK(wigner::expectation_weyl(F, mono(0, 2)) == doctest::Approx(0.25 + 0.16).epsilon(1e-9));
  // symmetrized cross moment of an uncorrelated packet
  CHECK(wigner::expectation_weyl(F, mono(1, 1)) == doctest::Approx(0.24).epsilon(1e-8));
}

TEST_CASE("momentum degree above two is rejected for polynomial symbols") {
  const PolySymbol s = PolySymbol::monomial_1d(0, 3, 1.0);
  CHECK_THROWS_AS(wigner::weyl_symbol(s, 1.0), std::invalid_argument);
}

TEST_CASE("projector pairing gives overlap probabilities") {
  const WaveFunction a = states::coherent(kX, {0.0}, {0.0}, {1.0});
  const WaveFunction b = states::coherent(kX, {0.5}, {0.3}, {1.0});
  const PhaseSpaceFunction Fa = wigner::wigner_transform(a, kP);
  const WeylSymbol Pa = wigner::weyl_symbol(a, kP);
  const WeylSymbol Pb = wigner::weyl_symbol(b, kP);
  CHECK(wigner::probability_weyl(Fa, Pa.field()).value == doctest::Approx(1.0).epsilon(1e-9));
  // |<a|b>|^2 = exp(-(dx0)^2/(4 dx^2) - dx^2 (dp0)^2 / hbar^2)
  const double want = std::exp(-0.25 * 0.25 - 0.09);
  CHECK(wigner::probability_weyl(Fa, Pb.field()).value == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("half-shift range must fit the position box") {
  const WaveFunction psi = states::coherent(kX, {0.0}, {0.0}, {1.0});
  // a fine momentum step needs separations wider than the box
  const SpatialGrid narrow = SpatialGrid::centered(1, 2.0, 64);
  CHECK_THROWS_AS(wigner::wigner_transform(psi, narrow), std::invalid_argument);
}
