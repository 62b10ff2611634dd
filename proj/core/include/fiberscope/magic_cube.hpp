#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fiberscope/building.hpp"

namespace fiberscope {

/// Nonnegative weights on {0..t-1}^n.
///
/// Dense storage while t^n <= kDenseLimit, an ordered sparse map beyond it.
/// Index tuples are flattened with axis 0 most significant.
class MagicCube {
 public:
  using Index = std::vector<std::size_t>;
  static constexpr std::size_t kDenseLimit = 10'000'000;

  MagicCube() = default;
  /// Throws InvalidArgument (n = 0 or t = 0).
  MagicCube(std::size_t n, std::size_t t);

  std::size_t dimension() const noexcept { return n_; }
  std::size_t side() const noexcept { return t_; }
  bool dense() const noexcept { return dense_; }

  std::uint64_t weight(std::span<const std::size_t> index) const;
  void add(std::span<const std::size_t> index, std::uint64_t amount);
  void set(std::span<const std::size_t> index, std::uint64_t value);
  std::uint64_t total() const noexcept { return total_; }

  /// Calls f(index, weight) for each nonzero entry in lexicographic order.
  template <typename F>
  void for_each_nonzero(F&& f) const {
    Index idx(n_);
    if (dense_) {
      for (std::size_t flat = 0; flat < dense_weights_.size(); ++flat) {
        if (dense_weights_[flat] == 0) continue;
        unflatten(flat, idx);
        f(static_cast<const Index&>(idx), dense_weights_[flat]);
      }
    } else {
      for (const auto& [flat, w] : sparse_weights_) {
        unflatten(flat, idx);
        f(static_cast<const Index&>(idx), w);
      }
    }
  }

  /// Chambers of st(P_i) labelling axis i, ascending (set by cube_from_panels).
  std::vector<std::vector<std::size_t>> axis_labels;

  /// Relabels axis i by `perms[i]`: new index perms[i][x] receives the weight at old index x.
  MagicCube permuted(const std::vector<std::vector<std::size_t>>& perms) const;

 private:
  std::uint64_t flatten(std::span<const std::size_t> index) const;
  void unflatten(std::uint64_t flat, Index& out) const;

  std::size_t n_ = 0;
  std::size_t t_ = 0;
  bool dense_ = true;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> dense_weights_;
  std::map<std::uint64_t, std::uint64_t> sparse_weights_;
};

/// weights[x] = #{D : pr_{P_i}(D) = axis_labels[i][x_i] for all i}. Throws DuplicatePanel.
MagicCube cube_from_panels(const Building& b, std::span<const std::size_t> panels);

/// Common axis-slice sum N. Throws NotMagic with axis, index, observed and expected in the message.
std::uint64_t verify_magic(const MagicCube& cube);

struct ZeroBlock {
  std::size_t k = 0;
  /// Per-axis index sets of size k spanning a zero-weight block.
  std::vector<std::vector<std::size_t>> axes;
  /// False when the greedy fallback was used; k is then a lower bound.
  bool exact = true;
  /// k / t < n^2 / (1 + n^2).
  bool bound_holds = true;
};

/// Exact search while 2^(t(n-1)) <= kZeroBlockExactLimit, greedy otherwise. Throws ZeroWeightCube.
inline constexpr std::uint64_t kZeroBlockExactLimit = std::uint64_t{1} << 24;
ZeroBlock max_zero_block(const MagicCube& cube);

struct Diagonal {
  /// perms[i][j] = axis-i index of the j-th diagonal entry; a full permutation of 0..t-1.
  std::vector<std::vector<std::size_t>> perms;
  /// Leading diagonal positions with positive weight.
  std::size_t length = 0;
};

/// ceil(t / (1 + n^2)).
std::size_t diagonal_guarantee(std::size_t n, std::size_t t);

/// Axis permutations whose first `length` diagonal entries carry positive
/// weight. Maximum matching for n = 2, a maximal coordinate-disjoint set of
/// positive entries otherwise. Throws ZeroWeightCube.
Diagonal positive_diagonal(const MagicCube& cube);

/// m chambers with pairwise distinct projections onto every listed panel,
/// verified by direct projection calls. Throws NotFound, DuplicatePanel.
std::vector<std::size_t> independent_chambers(const Building& b, std::span<const std::size_t> panels,
                                              std::size_t m);

struct Spread {
  std::vector<std::size_t> chambers;
  /// False when fewer than the requested number were found (the prefix is still valid).
  bool complete = false;
};

/// Chambers D_1..D_l opposite every E_i whose hull unions pairwise meet exactly
/// in the union of the E_i (checked on chambers and on vertex supports).
Spread opposite_spread(const Building& b, std::span<const std::size_t> base, std::size_t l);

/// Chambers opposite every chamber of `base`, ascending.
std::vector<std::size_t> common_opposites(const Building& b, std::span<const std::size_t> base);

}  // namespace fiberscope
