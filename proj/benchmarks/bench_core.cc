#include <benchmark/benchmark.h>

#include "psbohm/bohm.hpp"
#include "psbohm/cohen.hpp"
#include "psbohm/madelung.hpp"
#include "psbohm/moyal.hpp"
#include "psbohm/states.hpp"
#include "psbohm/wigner.hpp"

namespace {

using namespace psbohm;

SpatialGrid grid_of(int n) { return SpatialGrid::centered(1, 20.0, n); }

void BM_WignerTransform(benchmark::State& state) {
  const SpatialGrid xg = grid_of(static_cast<int>(state.range(0)));
  const SpatialGrid pg = momentum_grid(xg, 1.0);
  const WaveFunction psi = states::coherent(xg, {0.0}, {0.0}, {1.0});
  for (auto _ : state) {
    PhaseSpaceFunction F = wigner::wigner_transform(psi, pg);
    benchmark::DoNotOptimize(F.samples.data());
  }
}
BENCHMARK(BM_WignerTransform)->Arg(128)->Arg(256)->Arg(512);

void BM_GuidanceKernel(benchmark::State& state) {
  const SpatialGrid xg = grid_of(static_cast<int>(state.range(0)));
  const SpatialGrid pg = momentum_grid(xg, 1.0);
  const WaveFunction psi = states::coherent(xg, {0.0}, {0.0}, {1.0});
  const madelung::MadelungFields fields = madelung::decompose(psi);
  for (auto _ : state) {
    cohen::CohenKernel k = bohm::bohm_kernel(psi, fields, pg);
    benchmark::DoNotOptimize(k.samples.data());
  }
}
BENCHMARK(BM_GuidanceKernel)->Arg(128)->Arg(256)->Arg(512);

void BM_StarPolyGrid(benchmark::State& state) {
  const SpatialGrid xg = SpatialGrid::centered(1, 12.0, static_cast<int>(state.range(0)));
  const SpatialGrid pg = momentum_grid(xg, 1.0);
  PolySymbol h = PolySymbol::monomial_1d(0, 2, cplx(0.5));
  h.add(PolyTerm{{2, 0, 0}, {0, 0, 0}, cplx(0.5)});
  const WeylSymbol hw(h, 1.0);
  const WaveFunction psi = states::oscillator_eigenstate(xg, 0);
  const WeylSymbol g(wigner::wigner_transform(psi, pg));
  for (auto _ : state) {
    WeylSymbol out = moyal::moyal_star(hw, g);
    benchmark::DoNotOptimize(out.field().samples.data());
  }
}
BENCHMARK(BM_StarPolyGrid)->Arg(64)->Arg(128);

void BM_StarSpectral(benchmark::State& state) {
  const SpatialGrid xg = SpatialGrid::centered(1, 12.0, static_cast<int>(state.range(0)));
  const SpatialGrid pg = momentum_grid(xg, 1.0);
  const WaveFunction psi = states::oscillator_eigenstate(xg, 0);
  const WeylSymbol g(wigner::wigner_transform(psi, pg));
  for (auto _ : state) {
    WeylSymbol out = moyal::moyal_star(g, g);
    benchmark::DoNotOptimize(out.field().samples.data());
  }
}
BENCHMARK(BM_StarSpectral)->Arg(32)->Arg(64);

void BM_Decompose(benchmark::State& state) {
  const SpatialGrid xg = grid_of(static_cast<int>(state.range(0)));
  const WaveFunction psi = states::coherent(xg, {0.0}, {0.0}, {1.0});
  for (auto _ : state) {
    madelung::MadelungFields f = madelung::decompose(psi);
    benchmark::DoNotOptimize(f.density.data());
  }
}
BENCHMARK(BM_Decompose)->Arg(512)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
