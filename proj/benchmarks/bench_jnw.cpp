#include <benchmark/benchmark.h>

#include "fiberscope/building.hpp"
#include "fiberscope/estimate.hpp"
#include "fiberscope/legality.hpp"
#include "fiberscope/rng.hpp"

namespace fs = fiberscope;

static void BM_ConnectedWord(benchmark::State& state) {
  const auto b = fs::build_typeA(2, 3);
  const fs::SideOracle oracle(b.complex());
  fs::SplitMix64 rng(7);
  const std::uint64_t mask = (std::uint64_t{1} << 26) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(oracle.connected_word(rng.next() & mask));
}
BENCHMARK(BM_ConnectedWord);

static void BM_CensusHeawood(benchmark::State& state) {
  const auto b = fs::build_typeA(2, 2);
  const auto pred = fs::parse_predicate("not-connected");
  for (auto _ : state) benchmark::DoNotOptimize(fs::census(b.complex(), pred));
}
BENCHMARK(BM_CensusHeawood)->Unit(benchmark::kMillisecond);

static void BM_EstimateA2p5(benchmark::State& state) {
  const auto b = fs::build_typeA(2, 5);
  const auto pred = fs::parse_predicate("not-connected");
  for (auto _ : state) benchmark::DoNotOptimize(fs::estimate_fraction(b.complex(), pred, 10'000, 0));
}
BENCHMARK(BM_EstimateA2p5)->Unit(benchmark::kMillisecond);
