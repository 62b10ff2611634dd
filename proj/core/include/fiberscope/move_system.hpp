#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fiberscope/flag_complex.hpp"
#include "fiberscope/vertex_set.hpp"

namespace fiberscope {

/// One move per vertex plus a reduced F_2 basis of their span.
///
/// Basis vectors are sorted by pivot (lowest set bit) and fully reduced: no
/// basis vector has another vector's pivot bit set.
class MoveSystem {
 public:
  MoveSystem() = default;

  /// Checks v in mu_v and mu_v disjoint from the neighbours of v. Throws InvalidArgument, WidthMismatch.
  static MoveSystem from_moves(const FlagComplex& complex, std::vector<VertexSet> moves);
  /// No axiom checks; used to exercise the height-consistency failure path.
  static MoveSystem unchecked(std::size_t width, std::vector<VertexSet> moves);

  std::size_t width() const noexcept { return width_; }
  const std::vector<VertexSet>& moves() const noexcept { return moves_; }
  const VertexSet& move(std::size_t v) const { return moves_.at(v); }
  const std::vector<VertexSet>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  std::size_t rank() const noexcept { return basis_.size(); }

  /// Canonical coset representative: x reduced to zero on every pivot.
  VertexSet reduce(VertexSet x) const;
  bool in_span(const VertexSet& x) const { return reduce(x).empty(); }

  friend bool operator==(const MoveSystem& a, const MoveSystem& b) { return a.moves_ == b.moves_; }

 private:
  void build_basis();

  std::size_t width_ = 0;
  std::vector<VertexSet> moves_;
  std::vector<VertexSet> basis_;
  std::vector<std::size_t> pivots_;
};

/// Empty string when the axioms hold, otherwise a description of the first violation.
std::string move_axiom_violation(const FlagComplex& complex, std::span<const VertexSet> moves);

/// mu_v = colour class of v. Throws ImproperColoring, WidthMismatch.
MoveSystem move_system_from_coloring(const FlagComplex& complex, std::span<const std::size_t> color_of);

/// rep + span(M), member i = rep ^ (XOR of basis[j] for bits j of i). Throws WidthMismatch.
std::vector<VertexSet> coset_members(const MoveSystem& moves, const VertexSet& rep);

}  // namespace fiberscope
