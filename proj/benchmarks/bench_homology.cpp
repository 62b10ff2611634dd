#include <benchmark/benchmark.h>

#include "fiberscope/building.hpp"
#include "fiberscope/homology.hpp"

namespace fs = fiberscope;

static void BM_ReducedHomologyHeawood(benchmark::State& state) {
  const auto b = fs::build_typeA(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fs::reduced_homology(b.complex()));
}
BENCHMARK(BM_ReducedHomologyHeawood);

static void BM_ReducedHomologyA3(benchmark::State& state) {
  const auto b = fs::build_typeA(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(fs::reduced_homology(b.complex()));
}
BENCHMARK(BM_ReducedHomologyA3)->Unit(benchmark::kMillisecond);

static void BM_SmithRandomDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  fs::IntegerMatrix m(n, n);
  std::uint64_t x = 12345;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      x = x * 6364136223846793005ULL + 1442695040888963407ULL;
      m(r, c) = static_cast<std::int64_t>((x >> 33) % 7) - 3;
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(fs::smith_normal_form(m));
}
BENCHMARK(BM_SmithRandomDense)->Arg(8)->Arg(16)->Arg(32);
