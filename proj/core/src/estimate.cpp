#include "fiberscope/estimate.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <vector>

#include "fiberscope/error.hpp"
#include "fiberscope/rng.hpp"
#include "parallel.hpp"

namespace fiberscope {

namespace {

int parse_param(std::string_view text, std::string_view full) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw Error(ErrorCode::InvalidArgument, "bad predicate parameter in '" + std::string(full) + "'");
  }
  return value;
}

}  // namespace

Predicate parse_predicate(std::string_view text) {
  if (text == "not-connected") return {PredicateKind::NotConnected, 0};
  const auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    const auto name = text.substr(0, colon);
    const int param = parse_param(text.substr(colon + 1), text);
    if (name == "not-acyclic" && param >= -1) return {PredicateKind::NotAcyclic, param};
    if (name == "trivial-top" && param >= 0) return {PredicateKind::TrivialTop, param};
    if (name == "not-chamber" && param >= 0) return {PredicateKind::NotChamber, param};
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown predicate '" + std::string(text) +
                  "' (not-connected | not-acyclic:<k> | trivial-top:<d> | not-chamber:<d>)");
}

std::string to_string(const Predicate& predicate) {
  switch (predicate.kind) {
    case PredicateKind::NotConnected: return "not-connected";
    case PredicateKind::NotAcyclic: return "not-acyclic:" + std::to_string(predicate.param);
    case PredicateKind::TrivialTop: return "trivial-top:" + std::to_string(predicate.param);
    case PredicateKind::NotChamber: return "not-chamber:" + std::to_string(predicate.param);
  }
  return "?";
}

bool evaluate(const SideOracle& oracle, const Predicate& predicate, const VertexSet& subset) {
  switch (predicate.kind) {
    case PredicateKind::NotConnected: return !oracle.connected(subset);
    case PredicateKind::NotAcyclic: return !oracle.acyclic(subset, predicate.param);
    case PredicateKind::TrivialTop: return oracle.top_trivial(subset, predicate.param);
    case PredicateKind::NotChamber: return !is_chamber_complex(induced(oracle.complex(), subset), predicate.param);
  }
  return false;
}

namespace {

// Word-level evaluation where a fast path exists; falls back to `evaluate`.
bool evaluate_word(const SideOracle& oracle, const Predicate& predicate, std::uint64_t s, std::size_t n) {
  if (predicate.kind == PredicateKind::NotConnected) return !oracle.connected_word(s);
  if (oracle.graph_like()) {
    if (predicate.kind == PredicateKind::NotAcyclic) {
      if (s == 0) return true;
      if (predicate.param < 0) return false;
      if (!oracle.connected_word(s)) return true;
      if (predicate.param == 0) return false;
      return oracle.edges_word(s) + 1 != static_cast<std::size_t>(std::popcount(s));
    }
    if (predicate.kind == PredicateKind::TrivialTop) {
      if (s == 0) return true;
      if (predicate.param == 0) return oracle.components_word(s) == 1;
      if (predicate.param == 1) {
        return oracle.edges_word(s) + oracle.components_word(s) == static_cast<std::size_t>(std::popcount(s));
      }
      return true;
    }
  }
  return evaluate(oracle, predicate, VertexSet::from_word(n, s));
}

}  // namespace

double hoeffding_half_width(std::uint64_t samples, double alpha) {
  if (samples == 0) return 1.0;
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(samples)));
}

Estimate estimate_fraction(const FlagComplex& complex, const Predicate& predicate, std::uint64_t samples,
                           std::uint64_t seed, unsigned workers) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
  const SideOracle oracle(complex);
  const std::size_t n = complex.vertex_count();
  const std::uint64_t blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::uint64_t> block_hits(blocks, 0);
  detail::for_each_block(blocks, workers, [&](std::uint64_t b) {
    auto rng = SplitMix64::stream(seed, b);
    const std::uint64_t count = std::min(kSampleBlock, samples - b * kSampleBlock);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
      const VertexSet s = random_subset(rng, n);
      const bool hit = oracle.word_sized() ? evaluate_word(oracle, predicate, s.low_word(), n)
                                           : evaluate(oracle, predicate, s);
      if (hit) ++hits;
    }
    block_hits[b] = hits;
    return true;
  });
  Estimate out;
  out.predicate = to_string(predicate);
  out.samples = samples;
  out.seed = seed;
  for (auto h : block_hits) out.hits += h;
  out.p_hat = static_cast<double>(out.hits) / static_cast<double>(samples);
  const double half = hoeffding_half_width(samples);
  out.ci_low = std::max(0.0, out.p_hat - half);
  out.ci_high = std::min(1.0, out.p_hat + half);
  return out;
}

Estimate census(const FlagComplex& complex, const Predicate& predicate, unsigned workers, std::size_t vertex_cap) {
  const std::size_t n = complex.vertex_count();
  if (n > vertex_cap || n > 62) {
    throw Error(ErrorCode::BudgetExceeded, "census over 2^" + std::to_string(n) + " subsets exceeds the cap 2^" +
                                               std::to_string(std::min<std::size_t>(vertex_cap, 62)));
  }
  const SideOracle oracle(complex);
  const std::uint64_t total = std::uint64_t{1} << n;
  constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;
  const std::uint64_t blocks = (total + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> block_hits(blocks, 0);
  detail::for_each_block(blocks, workers, [&](std::uint64_t b) {
    const std::uint64_t begin = b * kChunk;
    const std::uint64_t end = std::min(total, begin + kChunk);
    std::uint64_t hits = 0;
    for (std::uint64_t s = begin; s < end; ++s) {
      if (evaluate_word(oracle, predicate, s, n)) ++hits;
    }
    block_hits[b] = hits;
    return true;
  });
  Estimate out;
  out.predicate = to_string(predicate);
  out.samples = total;
  out.exhaustive = true;
  for (auto h : block_hits) out.hits += h;
  out.p_hat = static_cast<double>(out.hits) / static_cast<double>(total);
  out.ci_low = out.p_hat;
  out.ci_high = out.p_hat;
  return out;
}

std::string csv_header() { return "predicate,samples,seed,p_hat,ci_low,ci_high"; }

std::string csv_row(const Estimate& e) {
  char numbers[96];
  std::snprintf(numbers, sizeof numbers, "%.6f,%.6f,%.6f", e.p_hat, e.ci_low, e.ci_high);
  return e.predicate + "," + std::to_string(e.samples) + "," +
         (e.exhaustive ? std::string("exhaustive") : std::to_string(e.seed)) + "," + numbers;
}

}  // namespace fiberscope
