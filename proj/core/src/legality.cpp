#include "fiberscope/legality.hpp"

#include <bit>

#include "fiberscope/error.hpp"

namespace fiberscope {

std::string_view to_string(LegalityMode mode) noexcept {
  return mode == LegalityMode::Homological ? "hom" : "conn";
}

LegalityMode parse_mode(std::string_view text) {
  if (text == "hom") return LegalityMode::Homological;
  if (text == "conn") return LegalityMode::Connectivity;
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(text) + "' (hom|conn)");
}

SideOracle::SideOracle(const FlagComplex& complex) : complex_(&complex) {
  const std::size_t n = complex.vertex_count();
  word_sized_ = n <= 64;
  graph_like_ = dimension(complex) <= 1;
  if (word_sized_) {
    rows_.resize(n);
    for (std::size_t v = 0; v < n; ++v) rows_[v] = complex.neighbors(v).low_word();
  }
}

bool SideOracle::connected_word(std::uint64_t s) const noexcept {
  if (s == 0) return false;
  std::uint64_t reached = s & (~s + 1);
  std::uint64_t frontier = reached;
  while (frontier != 0) {
    std::uint64_t next = 0;
    while (frontier != 0) {
      next |= rows_[static_cast<std::size_t>(std::countr_zero(frontier))];
      frontier &= frontier - 1;
    }
    next &= s & ~reached;
    reached |= next;
    frontier = next;
  }
  return reached == s;
}

std::size_t SideOracle::components_word(std::uint64_t s) const noexcept {
  std::size_t count = 0;
  while (s != 0) {
    std::uint64_t reached = s & (~s + 1);
    std::uint64_t frontier = reached;
    while (frontier != 0) {
      std::uint64_t next = 0;
      while (frontier != 0) {
        next |= rows_[static_cast<std::size_t>(std::countr_zero(frontier))];
        frontier &= frontier - 1;
      }
      next &= s & ~reached;
      reached |= next;
      frontier = next;
    }
    s &= ~reached;
    ++count;
  }
  return count;
}

std::size_t SideOracle::edges_word(std::uint64_t s) const noexcept {
  std::size_t twice = 0;
  for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
    twice += static_cast<std::size_t>(std::popcount(rows_[static_cast<std::size_t>(std::countr_zero(rest))] & s));
  }
  return twice / 2;
}

bool SideOracle::connected(const VertexSet& s) const {
  if (s.width() != complex_->vertex_count()) throw Error(ErrorCode::WidthMismatch, "subset width");
  if (word_sized_) return connected_word(s.low_word());
  return is_connected(induced(*complex_, s));
}

bool SideOracle::acyclic(const VertexSet& s, int k) const {
  if (s.width() != complex_->vertex_count()) throw Error(ErrorCode::WidthMismatch, "subset width");
  if (s.empty()) return false;
  if (k < 0) return true;
  if (!connected(s)) return false;
  if (k == 0) return true;
  if (word_sized_ && graph_like_) {
    // connected graph: H~_1 free of rank E - V + 1, nothing above
    return edges_word(s.low_word()) + 1 == s.count();
  }
  return is_k_acyclic(induced(*complex_, s), k);
}

bool SideOracle::top_trivial(const VertexSet& s, int d) const {
  if (s.width() != complex_->vertex_count()) throw Error(ErrorCode::WidthMismatch, "subset width");
  if (d < 0) throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(d));
  if (s.empty()) return true;
  if (word_sized_ && graph_like_) {
    const std::uint64_t w = s.low_word();
    const std::size_t c = components_word(w);
    if (d == 0) return c == 1;
    if (d == 1) return edges_word(w) + c == s.count();
    return true;
  }
  return !top_homology_nontrivial(induced(*complex_, s), d);
}

HomologyProfile SideOracle::profile(const VertexSet& s) const { return reduced_homology(induced(*complex_, s)); }

bool SideOracle::legal(const VertexSet& sigma, int m, LegalityMode mode) const {
  if (sigma.width() != complex_->vertex_count()) throw Error(ErrorCode::WidthMismatch, "state width");
  const int k = m - 1;
  if (mode == LegalityMode::Connectivity && k > 0) {
    throw Error(ErrorCode::UnsupportedDegree, "connectivity mode supports only m - 1 in {-1, 0}");
  }
  if (k < -1) return true;
  const VertexSet other = sigma.complement();
  if (k == -1) return !sigma.empty() && !other.empty();
  if (word_sized_ && k == 0) return connected_word(sigma.low_word()) && connected_word(other.low_word());
  return acyclic(sigma, k) && acyclic(other, k);
}

bool SideOracle::sharply_legal(const VertexSet& sigma, int k) const {
  if (!legal(sigma, k + 1, LegalityMode::Homological)) return false;
  for (const auto& side : {sigma, sigma.complement()}) {
    if (k + 1 >= 0 && top_trivial(side, k + 1)) return false;
    if (k + 2 >= 0 && !top_trivial(side, k + 2)) return false;
  }
  return true;
}

bool is_legal_state(const FlagComplex& complex, const VertexSet& sigma, int m, LegalityMode mode) {
  return SideOracle(complex).legal(sigma, m, mode);
}

bool is_sharply_legal_state(const FlagComplex& complex, const VertexSet& sigma, int k) {
  return SideOracle(complex).sharply_legal(sigma, k);
}

}  // namespace fiberscope
