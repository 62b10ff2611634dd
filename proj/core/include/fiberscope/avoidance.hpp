#pragma once

#include <cstddef>
#include <cstdint>

#include "fiberscope/flag_complex.hpp"

namespace fiberscope {

/// ((2^n - 1) / 2^n)^m, exact. Throws InvalidArgument unless m, n >= 1.
Rational avoidance_probability(std::size_t m, std::size_t n);

enum class Placement {
  /// One representative per multiset of block sizes (counts are invariant under relabeling S).
  Canonical,
  /// Every family of m pairwise disjoint subsets of size <= n.
  Exhaustive,
};

/// max over families A of m pairwise disjoint subsets of S with |A_i| <= n of
/// #{T subset of S : A_i not subset of T for all i}, by brute force over all T.
/// Throws TooLarge (|S| > 24), InvalidArgument (m or n < 1).
std::uint64_t brute_p_mn(std::size_t s_size, std::size_t m, std::size_t n,
                         Placement placement = Placement::Canonical);

}  // namespace fiberscope
