#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fiberscope/flag_complex.hpp"
#include "fiberscope/vertex_set.hpp"

namespace fiberscope {

/// Subspace of F_p^ambient in canonical reduced row-echelon form.
struct Subspace {
  int p = 2;
  int ambient = 0;
  std::vector<std::vector<int>> basis;  // RREF rows, entries in [0, p)

  std::size_t dim() const noexcept { return basis.size(); }
  /// "<dim>:<row>|<row>" with comma-separated entries, e.g. "2:1,0,0|0,1,0".
  std::string label() const;

  friend auto operator<=>(const Subspace&, const Subspace&) = default;
};

/// Canonical RREF of the span of `vectors` over F_p (zero rows dropped).
Subspace span_of(const std::vector<std::vector<int>>& vectors, int p, int ambient);
/// Dimension of the sum of two subspaces.
std::size_t sum_dimension(const Subspace& a, const Subspace& b);
bool contains(const Subspace& outer, const Subspace& inner);
bool is_prime(int p);

/// Codimension-1 face of a chamber. `type` is the dimension of the omitted subspace.
struct Panel {
  std::vector<std::size_t> vertices;
  std::size_t type = 0;
};

struct BuildOptions {
  std::size_t vertex_cap = FlagComplex::kDefaultVertexCap;
  std::size_t chamber_cap = 8192;
  /// All-pairs gallery distances; required by projection, opposition and hull queries.
  bool distances = true;
};

/// The type-A_k building of proper nontrivial subspaces of F_p^{k+1}.
///
/// Vertices are ordered by dimension, then lexicographically by canonical
/// basis; chambers (complete flags) are listed as ascending vertex tuples in
/// lexicographic order, so the i-th vertex of a chamber has dimension i+1.
class Building {
 public:
  int rank() const noexcept { return k_; }
  int prime() const noexcept { return p_; }

  const std::vector<Subspace>& subspaces() const noexcept { return subspaces_; }
  const FlagComplex& complex() const noexcept { return complex_; }
  std::size_t vertex_count() const noexcept { return subspaces_.size(); }

  const std::vector<std::vector<std::size_t>>& chambers() const noexcept { return chambers_; }
  std::size_t chamber_count() const noexcept { return chambers_.size(); }
  const std::vector<Panel>& panels() const noexcept { return panels_; }
  /// Chambers containing the panel, ascending.
  const std::vector<std::size_t>& panel_star(std::size_t panel) const { return panel_star_.at(panel); }
  /// Panels of a chamber, ordered by type 1..k.
  const std::vector<std::size_t>& chamber_panels(std::size_t chamber) const {
    return chamber_panels_.at(chamber);
  }
  const std::vector<std::size_t>& chamber_neighbors(std::size_t chamber) const {
    return chamber_neighbors_.at(chamber);
  }

  bool has_distances() const noexcept { return !distance_.empty(); }
  /// Gallery distance; throws UnknownChamber.
  int distance(std::size_t c, std::size_t d) const;
  /// Largest gallery distance (k(k+1)/2 for type A_k).
  int diameter() const noexcept { return diameter_; }
  /// Minimum number of chambers on a panel.
  std::size_t thickness() const noexcept;
  bool uniformly_thick() const noexcept;

  std::optional<std::size_t> find_subspace(const Subspace& s) const;
  std::optional<std::size_t> find_chamber(std::span<const std::size_t> vertices) const;
  std::optional<std::size_t> find_panel(std::span<const std::size_t> vertices) const;
  /// Chambers whose vertex set contains `simplex`, ascending.
  std::vector<std::size_t> chambers_containing(std::span<const std::size_t> simplex) const;
  VertexSet chamber_vertices(std::size_t chamber) const;

  void check_chamber(std::size_t chamber) const;

 private:
  friend Building build_typeA(int k, int p, const BuildOptions& options);

  int k_ = 0;
  int p_ = 0;
  std::vector<Subspace> subspaces_;
  FlagComplex complex_;
  std::vector<std::vector<std::size_t>> chambers_;
  std::vector<Panel> panels_;
  std::vector<std::vector<std::size_t>> panel_star_;
  std::vector<std::vector<std::size_t>> chamber_panels_;
  std::vector<std::vector<std::size_t>> chamber_neighbors_;
  std::vector<std::vector<std::size_t>> vertex_chambers_;
  std::vector<std::uint8_t> distance_;
  int diameter_ = 0;
};

/// Throws NotPrime, TooLarge, InvalidArgument (k < 1).
Building build_typeA(int k, int p, const BuildOptions& options = {});

int gallery_distance(const Building& b, std::size_t c, std::size_t d);

/// The unique chamber containing `simplex` nearest to `chamber`.
/// Throws NotASimplex, UnknownChamber, NonUniqueMinimizer.
std::size_t projection(const Building& b, std::span<const std::size_t> simplex, std::size_t chamber);
/// Projection onto a panel by id (star lookup, no simplex search).
std::size_t project_to_panel(const Building& b, std::size_t panel, std::size_t chamber);

bool is_opposite(const Building& b, std::size_t c, std::size_t d);
/// Flag transversality V_i + W_{k+1-i} = F_p^{k+1} for all i; equivalent to opposition in type A.
bool flags_transversal(const Building& b, std::size_t c, std::size_t d);
std::vector<std::size_t> opposite_chambers(const Building& b, std::size_t c);

/// Vertices spanned by proper nonempty subsets of k+1 independent lines. Throws NotAFrame.
VertexSet apartment_from_frame(const Building& b, std::span<const std::size_t> lines);

/// Chambers on minimal galleries from c to d, ascending.
std::vector<std::size_t> convex_hull(const Building& b, std::size_t c, std::size_t d);

enum class CoverVerdict { Covered, NotCovered, Inconclusive };

struct ChamberCover {
  std::size_t chamber = 0;
  std::optional<std::size_t> opposite;  // witness D with conv(E, D) inside X
};

struct CoverReport {
  std::vector<ChamberCover> results;
  std::size_t chambers_in_subcomplex = 0;
  CoverVerdict verdict = CoverVerdict::NotCovered;
};

/// For each chamber E of the induced subcomplex on X (first `budget` in index
/// order), searches for an opposite D in X whose convex hull with E stays in X.
CoverReport covers_by_apartments(const Building& b, const VertexSet& subset, std::size_t budget);

std::string_view to_string(CoverVerdict v) noexcept;

}  // namespace fiberscope
