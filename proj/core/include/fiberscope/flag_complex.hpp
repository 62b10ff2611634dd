#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fiberscope/vertex_set.hpp"

namespace fiberscope {

using Rational = boost::multiprecision::cpp_rational;

/// Sorted list of vertex indices.
using Simplex = std::vector<std::size_t>;
using Edge = std::pair<std::size_t, std::size_t>;

/// A finite flag complex, stored as its 1-skeleton.
///
/// Simplices are exactly the cliques of the adjacency graph. Adjacency is a
/// dense symmetric bit matrix with an empty diagonal; the object is immutable
/// once built and can be shared read-only between threads.
class FlagComplex {
 public:
  static constexpr std::size_t kDefaultVertexCap = 4096;

  /// The empty complex.
  FlagComplex() = default;

  /// Throws IndexOutOfRange, DuplicateEdge, SelfLoop, or TooLarge (n > vertex_cap).
  static FlagComplex from_graph(std::size_t n, std::span<const Edge> edges,
                                std::vector<std::string> labels = {},
                                std::size_t vertex_cap = kDefaultVertexCap);

  std::size_t vertex_count() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  bool adjacent(std::size_t i, std::size_t j) const { return rows_.at(i).test(j); }
  const VertexSet& neighbors(std::size_t i) const { return rows_.at(i); }
  std::size_t degree(std::size_t i) const { return rows_.at(i).count(); }
  std::size_t edge_count() const noexcept;
  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const;

  /// Per-vertex annotations; empty strings where unlabeled.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept;

  VertexSet all_vertices() const { return VertexSet::full(vertex_count()); }
  bool is_simplex(std::span<const std::size_t> vertices) const;

  friend bool operator==(const FlagComplex& a, const FlagComplex& b) {
    return a.rows_ == b.rows_ && a.labels_ == b.labels_;
  }

 private:
  friend FlagComplex induced(const FlagComplex& complex, const VertexSet& subset);

  std::vector<VertexSet> rows_;
  std::vector<std::string> labels_;
};

/// Full subcomplex on `subset`, vertices renumbered in increasing order.
/// Throws WidthMismatch.
FlagComplex induced(const FlagComplex& complex, const VertexSet& subset);

/// Dimension of the largest simplex; -1 for the empty complex.
int dimension(const FlagComplex& complex);

/// (l_0, ..., l_d): number of k-simplices. Empty for the empty complex.
std::vector<std::size_t> f_vector(const FlagComplex& complex);

/// All simplices of dimension `dim`, in lexicographic order of their sorted vertex lists.
std::vector<Simplex> simplices(const FlagComplex& complex, std::size_t dim);

/// Maximal simplices in lexicographic order (Bron–Kerbosch, pivoting, degeneracy order).
std::vector<Simplex> maximal_simplices(const FlagComplex& complex);

/// Charney–Davis curvature sum_{k=-1}^{n} (-1/2)^{k+1} l_k, with l_{-1} = 1.
Rational charney_davis(const FlagComplex& complex, int n);

struct Coloring {
  std::size_t colors = 0;
  std::vector<std::size_t> color_of;
};

/// Exact chromatic number of the 1-skeleton with a witness coloring.
Coloring chromatic_number(const FlagComplex& complex);
bool is_proper_coloring(const FlagComplex& complex, std::span<const std::size_t> color_of);

struct GirthInfo {
  std::optional<std::size_t> girth;  // nullopt = infinite (forest)
  bool square_free = true;           // no induced 4-cycle
};

GirthInfo girth_and_square_free(const FlagComplex& complex);

struct LinkStar {
  VertexSet link_vertices;
  VertexSet star_vertices;
  FlagComplex link;
  FlagComplex star;
};

/// Throws NotASimplex.
LinkStar link_star(const FlagComplex& complex, std::span<const std::size_t> simplex);

/// Nonempty, pure of dimension d, and gallery-connected through codimension-1 faces.
bool is_chamber_complex(const FlagComplex& complex, int d);

/// Number of connected components of the 1-skeleton.
std::size_t component_count(const FlagComplex& complex);

}  // namespace fiberscope
