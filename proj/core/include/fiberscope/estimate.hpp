#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fiberscope/flag_complex.hpp"
#include "fiberscope/legality.hpp"

namespace fiberscope {

enum class PredicateKind { NotConnected, NotAcyclic, TrivialTop, NotChamber };

/// Predicate on induced subcomplexes. Text forms: "not-connected",
/// "not-acyclic:<k>", "trivial-top:<d>", "not-chamber:<d>".
struct Predicate {
  PredicateKind kind = PredicateKind::NotConnected;
  int param = 0;

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Throws InvalidArgument.
Predicate parse_predicate(std::string_view text);
std::string to_string(const Predicate& predicate);

bool evaluate(const SideOracle& oracle, const Predicate& predicate, const VertexSet& subset);

/// Two-sided Hoeffding half-width sqrt(ln(2/alpha) / (2 samples)).
double hoeffding_half_width(std::uint64_t samples, double alpha = 0.01);

struct Estimate {
  std::string predicate;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t hits = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  /// Exact census over all subsets; the interval then collapses to p_hat.
  bool exhaustive = false;
};

/// Samples per block; block b draws from SplitMix64::stream(seed, b), so the
/// result does not depend on the worker count.
inline constexpr std::uint64_t kSampleBlock = 4096;

/// Fraction of uniformly random vertex subsets satisfying the predicate, with a 99% interval.
Estimate estimate_fraction(const FlagComplex& complex, const Predicate& predicate, std::uint64_t samples,
                           std::uint64_t seed, unsigned workers = 1);

/// Exact count over all 2^n subsets. Throws BudgetExceeded when n > vertex_cap.
Estimate census(const FlagComplex& complex, const Predicate& predicate, unsigned workers = 1,
                std::size_t vertex_cap = 30);

/// "predicate,samples,seed,p_hat,ci_low,ci_high"
std::string csv_header();
/// Fixed 6-decimal formatting; the seed column reads "exhaustive" for a census.
std::string csv_row(const Estimate& estimate);

}  // namespace fiberscope
