#include <benchmark/benchmark.h>

#include "rigidswap/bodyhinge.hpp"
#include "rigidswap/conditions.hpp"
#include "rigidswap/fixtures.hpp"
#include "rigidswap/statics.hpp"
#include "rigidswap/swap_iso.hpp"

using namespace rigidswap;

namespace {

// Tower(s, s - 1) grows the framework with one argument.
void BM_StaticDims(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const auto p = tower(s, s - 1);
  const BarFramework fw = fill_blocks(p, tower_configuration(s, s - 1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(static_dims(fw));
  state.counters["bars"] = fw.bar_count();
}
BENCHMARK(BM_StaticDims)->DenseRange(4, 12, 4);

void BM_StaticDimsExact(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const BarFramework fw = fill_blocks(tower(s, s - 1), tower_configuration(s, s - 1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(static_dims_exact(fw));
}
BENCHMARK(BM_StaticDimsExact)->DenseRange(4, 12, 4);

void BM_MotionDim(benchmark::State& state) {
  const int t = static_cast<int>(state.range(0));
  const auto s = build_body_hinge(tower(3, t), tower_configuration(3, t, 1));
  for (auto _ : state) benchmark::DoNotOptimize(motion_dim(s));
}
BENCHMARK(BM_MotionDim)->DenseRange(4, 12, 4);

void BM_SwapVerify(benchmark::State& state) {
  const Fixture& f = fixture_catalog()[static_cast<std::size_t>(state.range(0))];
  const Configuration c = f.configuration(1);
  for (auto _ : state) benchmark::DoNotOptimize(verify_swap_isomorphism(f.polyhedron, c));
  state.SetLabel(f.name);
}
BENCHMARK(BM_SwapVerify)->DenseRange(0, static_cast<int>(fixture_catalog().size()) - 1);

void BM_VanishingProbe(benchmark::State& state) {
  const auto p = tower(4, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(vanishing_rank_probe(p, FillStrategy::Chords, static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_VanishingProbe)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ConjectureProbe(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(conjecture_probe(static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_ConjectureProbe)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
