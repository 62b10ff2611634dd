#include "fiberscope/move_system.hpp"

#include <algorithm>

#include "fiberscope/error.hpp"

namespace fiberscope {

std::string move_axiom_violation(const FlagComplex& complex, std::span<const VertexSet> moves) {
  const std::size_t n = complex.vertex_count();
  if (moves.size() != n) {
    return "expected " + std::to_string(n) + " moves, got " + std::to_string(moves.size());
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (moves[v].width() != n) return "move " + std::to_string(v) + " has width " + std::to_string(moves[v].width());
    if (!moves[v].test(v)) return "vertex " + std::to_string(v) + " not in its own move";
    if (moves[v].intersects(complex.neighbors(v))) {
      return "move of vertex " + std::to_string(v) + " contains a neighbour";
    }
  }
  return {};
}

MoveSystem MoveSystem::from_moves(const FlagComplex& complex, std::vector<VertexSet> moves) {
  for (const auto& mv : moves) {
    if (mv.width() != complex.vertex_count()) throw Error(ErrorCode::WidthMismatch, "move width");
  }
  const auto problem = move_axiom_violation(complex, moves);
  if (!problem.empty()) throw Error(ErrorCode::InvalidArgument, problem);
  return unchecked(complex.vertex_count(), std::move(moves));
}

MoveSystem MoveSystem::unchecked(std::size_t width, std::vector<VertexSet> moves) {
  MoveSystem out;
  out.width_ = width;
  for (const auto& mv : moves) {
    if (mv.width() != width) throw Error(ErrorCode::WidthMismatch, "move width");
  }
  out.moves_ = std::move(moves);
  out.build_basis();
  return out;
}

void MoveSystem::build_basis() {
  basis_.clear();
  pivots_.clear();
  for (const auto& mv : moves_) {
    VertexSet x = reduce(mv);
    if (x.empty()) continue;
    const std::size_t p = x.first();
    for (auto& b : basis_) {
      if (b.test(p)) b ^= x;
    }
    basis_.push_back(std::move(x));
    pivots_.push_back(p);
  }
  std::vector<std::size_t> order(basis_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  std::vector<VertexSet> sorted_basis;
  std::vector<std::size_t> sorted_pivots;
  for (auto i : order) {
    sorted_basis.push_back(basis_[i]);
    sorted_pivots.push_back(pivots_[i]);
  }
  basis_ = std::move(sorted_basis);
  pivots_ = std::move(sorted_pivots);
}

VertexSet MoveSystem::reduce(VertexSet x) const {
  if (x.width() != width_) throw Error(ErrorCode::WidthMismatch, "state width does not match move system");
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (x.test(pivots_[i])) x ^= basis_[i];
  }
  return x;
}

MoveSystem move_system_from_coloring(const FlagComplex& complex, std::span<const std::size_t> color_of) {
  const std::size_t n = complex.vertex_count();
  if (color_of.size() != n) throw Error(ErrorCode::WidthMismatch, "coloring length does not match vertex count");
  if (!is_proper_coloring(complex, color_of)) throw Error(ErrorCode::ImproperColoring, "adjacent vertices share a colour");
  const std::size_t colors = n == 0 ? 0 : *std::max_element(color_of.begin(), color_of.end()) + 1;
  std::vector<VertexSet> classes(colors, VertexSet(n));
  for (std::size_t v = 0; v < n; ++v) classes[color_of[v]].set(v);
  std::vector<VertexSet> moves;
  moves.reserve(n);
  for (std::size_t v = 0; v < n; ++v) moves.push_back(classes[color_of[v]]);
  return MoveSystem::from_moves(complex, std::move(moves));
}

std::vector<VertexSet> coset_members(const MoveSystem& moves, const VertexSet& rep) {
  if (rep.width() != moves.width()) throw Error(ErrorCode::WidthMismatch, "representative width");
  const std::size_t r = moves.rank();
  if (r >= 31) throw Error(ErrorCode::TooLarge, "coset of rank " + std::to_string(r));
  std::vector<VertexSet> out;
  out.reserve(std::size_t{1} << r);
  for (std::size_t i = 0; i < (std::size_t{1} << r); ++i) {
    VertexSet s = rep;
    for (std::size_t j = 0; j < r; ++j) {
      if ((i >> j) & 1U) s ^= moves.basis()[j];
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace fiberscope
