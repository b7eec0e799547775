#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "psbohm/bohm.hpp"
#include "psbohm/gaussian_oracle.hpp"
#include "psbohm/states.hpp"
#include "psbohm/wigner.hpp"

using namespace psbohm;

namespace {

const SpatialGrid kX = SpatialGrid::centered(1, 20.0, 512);
const SpatialGrid kP = momentum_grid(kX, 1.0);
const oracle::CoherentParams kC{0.6, 0.4, 1.0, 1.0, 1.0};

WaveFunction packet() { return states::coherent(kX, {kC.x0}, {kC.p0}, {kC.dx}); }

}  // namespace

TEST_CASE("measure sits on the guidance graph with density weights") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi, {1e-9});
  const bohm::BohmMeasure m = bohm::bohm_measure(f);
  CHECK(m.total_weight == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(m.masked_deficit > 0.0);
  CHECK(m.total_weight + m.masked_deficit == doctest::Approx(1.0).epsilon(1e-10));
  double sup_p = 0.0;
  for (const auto& pt : m.points) {
    CHECK(pt.weight > 0.0);
    sup_p = std::max(sup_p, std::abs(pt.momentum[0] - kC.p0));
  }
  CHECK(sup_p < 1e-6);
}

TEST_CASE("characteristic function of the measure has the closed form") {
  const WaveFunction psi = packet();
  const bohm::BohmMeasure m = bohm::bohm_measure(madelung::decompose(psi, {1e-9}));
  CHECK(bohm::characteristic_function(m, 0.0, 0.0).real() ==
        doctest::Approx(m.total_weight).epsilon(1e-13));
  for (double xi : {0.0, 0.7, -1.3})
    for (double eta : {0.0, 0.5, 2.0}) {
      const cplx got = bohm::characteristic_function(m, xi, eta);
      CHECK(std::abs(got - oracle::measure_spectrum(kC, xi, eta)) < 1e-8);
    }
}

TEST_CASE("state kernel matches the closed form and ignores xi") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi);
  const cohen::CohenKernel k = bohm::bohm_kernel(psi, f, kP);
  REQUIRE(k.has_samples);
  const int N = 512;
  const SpatialGrid dual = SpatialGrid(fourier::concat_axes(kX, kP)).dual();

  // center column xi = 0 against the closed form; the kernel grows with eta,
  // so compare relative to its local size
  double sup = 0.0;
  for (int j = 0; j < N; ++j) {
    const std::size_t lin = k.samples.index({N / 2, j});
    if (k.mask[lin]) continue;
    const double eta = dual.coord(1, j);
    const double want = oracle::kernel(kC, eta);
    sup = std::max(sup, std::abs(k.samples[lin] - want) / std::max(1.0, std::abs(want)));
  }
  CHECK(sup < 1e-8);

  // eta = 0 row is exactly one and never masked
  for (int i = 0; i < N; ++i) {
    const std::size_t lin = k.samples.index({i, N / 2});
    CHECK(k.mask[lin] == 0);
    CHECK(k.samples[lin] == cplx(1.0, 0.0));
  }

  // away from the center column the sampled values stay xi-independent
  double spread = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const std::size_t lin = k.samples.index({i, j});
      const std::size_t mid = k.samples.index({N / 2, j});
      if (k.mask[lin] || k.mask[mid]) continue;
      spread = std::max(spread, std::abs(k.samples[lin] - k.samples[mid]) / std::abs(k.samples[mid]));
    }
  CHECK(spread < 1e-7);
}

TEST_CASE("identity kernel gives the band-limited lattice delta") {
  const bohm::MomentumStarGen sg =
      bohm::momentum_stargenfunction(cohen::wigner_kernel(1.0), kP, 0.5);
  const double dp = kP.axis(0).step;
  const std::vector<int> idx = nearest_node(kP, {0.5});
  CHECK(sg.p_star == doctest::Approx(kP.coord(0, idx[0])));
  double off = 0.0;
  for (int j = 0; j < 512; ++j) {
    const double v = sg.values[static_cast<std::size_t>(j)].real();
    if (j == idx[0])
      CHECK(v == doctest::Approx(1.0 / dp).epsilon(1e-10));
    else
      off = std::max(off, std::abs(v));
  }
  CHECK(off < 1e-9 / dp);
}

TEST_CASE("xi-dependent kernels are rejected by the momentum family") {
  GridArray<cplx> vals({512, 512});
  const SpatialGrid dual = SpatialGrid(fourier::concat_axes(kX, kP)).dual();
  for (std::size_t lin = 0; lin < vals.size(); ++lin) {
    const auto idx = vals.unravel(lin);
    const double xi = dual.coord(0, idx[0]);
    vals[lin] = std::exp(-0.01 * xi * xi);
  }
  const cohen::CohenKernel k = cohen::custom_kernel(kX, kP, vals, 1.0);
  CHECK_THROWS_AS(bohm::momentum_stargenfunction(k, kP, 0.0), std::invalid_argument);
}

TEST_CASE("folded momentum law recovers the quantum marginal") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f9 = madelung::decompose(psi, {1e-9});
  const bohm::BohmMeasure m = bohm::bohm_measure(f9);
  const cohen::CohenKernel k = bohm::bohm_kernel(psi, madelung::decompose(psi), kP, 1e-8);
  const bohm::MomentumStarGen sg = bohm::momentum_stargenfunction(k, kP, 0.5);
  CHECK(bohm::momentum_stargen_residual(sg, k) < 1e-6);

  const bohm::MomentumDistribution d = bohm::momentum_probability(m, sg);
  double sup = 0.0, hist_mass = 0.0, fold_mass = 0.0;
  const double dp = kP.axis(0).step;
  for (int j = 0; j < 512; ++j) {
    const double p = kP.coord(0, j);
    sup = std::max(sup, std::abs(d.folded[static_cast<std::size_t>(j)] - oracle::momentum_density(kC, p)));
    hist_mass += d.histogram[static_cast<std::size_t>(j)] * dp;
    fold_mass += d.folded[static_cast<std::size_t>(j)] * dp;
  }
  CHECK(sup < 1e-6);
  CHECK(hist_mass == doctest::Approx(m.total_weight).epsilon(1e-12));
  CHECK(fold_mass == doctest::Approx(1.0).epsilon(1e-6));

  // the raw histogram is a spike: every trajectory carries p = p0
  const std::vector<int> idx = nearest_node(kP, {kC.p0});
  CHECK(d.histogram[static_cast<std::size_t>(idx[0])] * dp ==
        doctest::Approx(m.total_weight).epsilon(1e-10));
}

TEST_CASE("position law is the configuration density") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi, {1e-12});
  const bohm::BohmMeasure m = bohm::bohm_measure(f);
  const cohen::CohenKernel k = bohm::bohm_kernel(psi, f, kP);
  const GridArray<double> d = bohm::position_probability(m, k);
  double sup = 0.0;
  for (int i = 0; i < 512; ++i) {
    const auto li = static_cast<std::size_t>(i);
    if (f.masked(li)) continue;
    sup = std::max(sup, std::abs(d[li] - std::norm(psi.samples[li])));
  }
  CHECK(sup < 1e-8);
}

TEST_CASE("flow energy balances kinetic, classical, and internal parts") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi, {1e-9});
  const bohm::BohmMeasure m = bohm::bohm_measure(f);
  GridArray<double> v({512});  // free particle
  const double direct =
      ops::expectation(psi, ops::hamiltonian(v)).real();
  CHECK(bohm::energy_mean(m, v, f) == doctest::Approx(direct).epsilon(1e-6));
  CHECK(direct == doctest::Approx(0.5 * (kC.p0 * kC.p0 + 0.25)).epsilon(1e-9));
}

TEST_CASE("local values average to operator expectations") {
  const WaveFunction psi = packet();
  const madelung::MadelungFields f = madelung::decompose(psi, {1e-9});
  const bohm::BohmMeasure m = bohm::bohm_measure(f);
  GridArray<double> x2({512});
  for (int i = 0; i < 512; ++i) {
    const double x = kX.coord(0, i);
    x2[static_cast<std::size_t>(i)] = x * x;
  }
  for (const ops::Action& op : {ops::multiply(x2), ops::kinetic()}) {
    const GridArray<double> loc = bohm::local_expectation(psi, op, f);
    const double direct = ops::expectation(psi, op).real();
    CHECK(bohm::expectation_local(m, loc) == doctest::Approx(direct).epsilon(1e-6));
  }
  const PolySymbol x2s = PolySymbol::monomial_1d(2, 0, 1.0);
  CHECK(bohm::expectation_bohm(m, x2s) == doctest::Approx(1.0 + 0.36).epsilon(1e-6));
}

TEST_CASE("three-dimensional measures scatter onto the density") {
  const SpatialGrid g3 = SpatialGrid::centered(3, 8.0, 32);
  const WaveFunction psi = states::lz_eigenstate_3d(g3);
  const madelung::MadelungFields f = madelung::decompose(psi, {1e-9});
  const bohm::BohmMeasure m = bohm::bohm_measure(f);
  CHECK(m.dims == 3);
  const cohen::CohenKernel k = bohm::kernel_moments(psi, f);
  const GridArray<double> d = bohm::position_probability(m, k);
  double sup = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (f.masked(i)) continue;
    sup = std::max(sup, std::abs(d[i] - std::norm(psi.samples[i])));
  }
  CHECK(sup < 1e-10);
  CHECK(quadrature(g3, d) == doctest::Approx(m.total_weight).epsilon(1e-10));
}

TEST_CASE("dimension and lattice guards") {
  const SpatialGrid g3 = SpatialGrid::centered(3, 8.0, 32);
  const WaveFunction psi3 = states::lz_eigenstate_3d(g3);
  const madelung::MadelungFields f3 = madelung::decompose(psi3, {1e-9});
  CHECK_THROWS_AS(bohm::bohm_kernel(psi3, f3, momentum_grid(g3, 1.0)), std::invalid_argument);

  const bohm::BohmMeasure m3 = bohm::bohm_measure(f3);
  CHECK_THROWS_AS(bohm::characteristic_function(m3, 1.0, 1.0), std::invalid_argument);

  const cohen::CohenKernel km = bohm::kernel_moments(psi3, f3);
  const WaveFunction psi = packet();
  const PhaseSpaceFunction F = wigner::wigner_transform(psi, kP);
  const bohm::BohmMeasure m = bohm::bohm_measure(madelung::decompose(psi));
  CHECK_THROWS_AS(bohm::probability_bohm(m, F, km), std::invalid_argument);
}
