#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fiberscope/flag_complex.hpp"
#include "fiberscope/homology.hpp"
#include "fiberscope/vertex_set.hpp"

namespace fiberscope {

enum class LegalityMode { Homological, Connectivity };

std::string_view to_string(LegalityMode mode) noexcept;
/// "hom" or "conn". Throws InvalidArgument.
LegalityMode parse_mode(std::string_view text);

/// Both sides of sigma are (m-1)-acyclic (homological) or (m-1)-connected
/// (connectivity; only m - 1 in {-1, 0}). Empty sides are never legal for m >= 0.
/// Throws UnsupportedDegree, WidthMismatch.
bool is_legal_state(const FlagComplex& complex, const VertexSet& sigma, int m, LegalityMode mode);

/// k-legal (homological), both sides have nonzero H~_{k+1} and zero H~_{k+2}.
bool is_sharply_legal_state(const FlagComplex& complex, const VertexSet& sigma, int k);

/// Predicates on induced subcomplexes with word-level fast paths.
///
/// When the complex has at most 64 vertices every subset fits in one word:
/// connectivity is a bit-parallel flood fill, and when the complex has no
/// triangles the homology of an induced subgraph is read off from component
/// and edge counts. Everything else goes through Smith normal form.
class SideOracle {
 public:
  explicit SideOracle(const FlagComplex& complex);

  const FlagComplex& complex() const noexcept { return *complex_; }
  bool word_sized() const noexcept { return word_sized_; }
  bool graph_like() const noexcept { return graph_like_; }

  /// Nonempty and connected.
  bool connected(const VertexSet& s) const;
  /// k = -1: nonempty; otherwise nonempty with H~_0..H~_k = 0.
  bool acyclic(const VertexSet& s, int k) const;
  /// H~_d = 0 (the empty complex has trivial homology in degrees >= 0).
  bool top_trivial(const VertexSet& s, int d) const;
  HomologyProfile profile(const VertexSet& s) const;

  bool connected_word(std::uint64_t s) const noexcept;
  std::size_t components_word(std::uint64_t s) const noexcept;
  std::size_t edges_word(std::uint64_t s) const noexcept;

  /// (m-1)-legality of sigma using the fastest valid path.
  bool legal(const VertexSet& sigma, int m, LegalityMode mode) const;
  bool sharply_legal(const VertexSet& sigma, int k) const;

 private:
  const FlagComplex* complex_;
  bool word_sized_ = false;
  bool graph_like_ = false;
  std::vector<std::uint64_t> rows_;
};

}  // namespace fiberscope
