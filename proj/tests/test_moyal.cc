#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psbohm/gaussian_oracle.hpp"
#include "psbohm/moyal.hpp"
#include "psbohm/states.hpp"
#include "psbohm/wigner.hpp"

using namespace psbohm;

namespace {

const SpatialGrid kX = SpatialGrid::centered(1, 12.0, 128);
const SpatialGrid kP = momentum_grid(kX, 1.0);

WeylSymbol mono(int xp, int pp, cplx coeff = 1.0) {
  return WeylSymbol(PolySymbol::monomial_1d(xp, pp, coeff), 1.0);
}

cplx coeff_of(const PolySymbol& s, int xp, int pp) {
  cplx c = 0.0;
  for (const auto& t : s.terms())
    if (t.xpow[0] == xp && t.ppow[0] == pp) c += t.coeff;
  return c;
}

}  // namespace

TEST_CASE("noncommutative products of coordinates") {
  const PolySymbol xp = moyal::moyal_star(mono(1, 0), mono(0, 1)).poly();
  CHECK(std::abs(coeff_of(xp, 1, 1) - 1.0) < 1e-14);
  CHECK(std::abs(coeff_of(xp, 0, 0) - cplx(0.0, 0.5)) < 1e-14);

  const PolySymbol comm = moyal::moyal_bracket(mono(1, 0), mono(0, 1)).poly();
  CHECK(std::abs(coeff_of(comm, 0, 0) - cplx(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(coeff_of(comm, 1, 1)) < 1e-14);
}

TEST_CASE("quadratic bracket matches the classical one up to i hbar") {
  // for symbols of degree <= 2 the bracket is exactly i hbar {A, B}
  const PolySymbol a = PolySymbol::monomial_1d(2, 0, 1.0);
  const PolySymbol b = PolySymbol::monomial_1d(0, 2, 1.0);
  const PolySymbol got = moyal::moyal_bracket(WeylSymbol(a, 1.0), WeylSymbol(b, 1.0)).poly();
  const PolySymbol pb = poisson_bracket(a, b);
  for (int ix = 0; ix <= 2; ++ix)
    for (int ip = 0; ip <= 2; ++ip)
      CHECK(std::abs(coeff_of(got, ix, ip) - cplx(0.0, 1.0) * coeff_of(pb, ix, ip)) < 1e-13);
}

TEST_CASE("momentum degree past the terminating regime is rejected") {
  CHECK_THROWS_AS(moyal::moyal_star(mono(0, 3), mono(0, 2)), std::invalid_argument);
}

TEST_CASE("mismatched hbar tags are rejected") {
  const WeylSymbol a(PolySymbol::monomial_1d(1, 0, 1.0), 1.0);
  const WeylSymbol b(PolySymbol::monomial_1d(0, 1, 1.0), 0.5);
  CHECK_THROWS_AS(moyal::moyal_star(a, b), std::invalid_argument);
}

TEST_CASE("ground state is a star eigenfunction of the oscillator energy") {
  const WaveFunction psi = states::oscillator_eigenstate(kX, 0);
  const PhaseSpaceFunction G = wigner::wigner_transform(psi, kP);
  GridArray<double> v({128});
  for (int i = 0; i < 128; ++i) {
    const double x = kX.coord(0, i);
    v[static_cast<std::size_t>(i)] = 0.5 * x * x;
  }
  const WeylSymbol H = mono(0, 2, 0.5);
  WeylSymbol Hfull = H;
  {
    PolySymbol s = PolySymbol::monomial_1d(0, 2, 0.5);
    s.add_symbol(PolySymbol::monomial_1d(2, 0, 0.5));
    Hfull = WeylSymbol(s, 1.0);
  }
  CHECK(moyal::stargen_residual(Hfull, G, 0.5) < 1e-8);
  CHECK(moyal::stargen_residual(Hfull, G, 0.6) > 1e-3);

  const moyal::StarGenFunction sg =
      moyal::stargenfunction_projector(psi, ops::hamiltonian(v), 0.5, kP);
  CHECK(sg.eigenvalue == 0.5);
  // projector symbols integrate to (2 pi hbar)^d
  CHECK(quadrature2(kX, kP, sg.symbol.samples).real() ==
        doctest::Approx(2.0 * M_PI).epsilon(1e-9));
}

TEST_CASE("projector construction rejects a wrong eigenvalue") {
  const WaveFunction psi = states::oscillator_eigenstate(kX, 0);
  GridArray<double> v({128});
  for (int i = 0; i < 128; ++i) {
    const double x = kX.coord(0, i);
    v[static_cast<std::size_t>(i)] = 0.5 * x * x;
  }
  CHECK_THROWS_AS(moyal::stargenfunction_projector(psi, ops::hamiltonian(v), 0.75, kP),
                  std::invalid_argument);
}

TEST_CASE("star square of a pure-state symbol reproduces the symbol") {
  const SpatialGrid xg = SpatialGrid::centered(1, 16.0, 128);
  const SpatialGrid pg = momentum_grid(xg, 1.0);
  const WaveFunction psi = states::coherent(xg, {0.3}, {-0.2}, {0.9});
  const PhaseSpaceFunction G = wigner::wigner_transform(psi, pg);

  // a rank-one density is idempotent, so G * G = G / (2 pi hbar)
  const WeylSymbol GG = moyal::moyal_star(WeylSymbol(G), WeylSymbol(G));

  const double scale = 1.0 / (2.0 * std::numbers::pi);
  double peak = 0.0, sup = 0.0;
  const auto& a = GG.field().samples;
  for (std::size_t i = 0; i < a.size(); ++i) {
    peak = std::max(peak, std::abs(G.samples[i]));
    sup = std::max(sup, std::abs(a[i] - scale * G.samples[i]));
  }
  CHECK(sup / (scale * peak) < 1e-8);
}
