#include <benchmark/benchmark.h>

#include "fiberscope/building.hpp"
#include "fiberscope/magic_cube.hpp"

namespace fs = fiberscope;

static void BM_BuildTypeA(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(fs::build_typeA(k, p));
}
BENCHMARK(BM_BuildTypeA)->Args({2, 2})->Args({2, 5})->Args({3, 2})->Unit(benchmark::kMillisecond);

static void BM_CubeFromPanels(benchmark::State& state) {
  const auto b = fs::build_typeA(2, 5);
  const std::size_t panels[] = {0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(fs::cube_from_panels(b, panels));
}
BENCHMARK(BM_CubeFromPanels)->Unit(benchmark::kMillisecond);
