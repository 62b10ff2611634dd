#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fiberscope/flag_complex.hpp"
#include "fiberscope/integer_matrix.hpp"

namespace fiberscope {

struct DegreeHomology {
  std::size_t free_rank = 0;
  /// Torsion coefficients, each >= 2, forming a divisibility chain.
  std::vector<BigInt> torsion;

  bool trivial() const noexcept { return free_rank == 0 && torsion.empty(); }
  friend bool operator==(const DegreeHomology&, const DegreeHomology&) = default;
};

/// Reduced integral homology H~_k for k = 0 .. degrees.size()-1, plus the
/// degree -1 information (whether the complex has a vertex).
struct HomologyProfile {
  bool nonempty = false;
  std::vector<DegreeHomology> degrees;

  /// H~_k; trivial for degrees beyond the computed range.
  const DegreeHomology& at(std::size_t k) const;
  bool trivial_at(std::size_t k) const { return at(k).trivial(); }
  /// "H0=0 H1=Z^8" style summary; "empty" for the empty complex.
  std::string summary() const;

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

/// Augmented boundary map from k-simplices (columns) to (k-1)-simplices (rows),
/// both in lexicographic order, sign (-1)^i for dropping the i-th vertex.
/// k = 0 gives the 1 x n augmentation row. Throws DegreeOutOfRange unless 0 <= k <= dim+1.
IntegerMatrix boundary_matrix(const FlagComplex& complex, int k);

/// Homology of an augmented chain complex. `cells[k]` is the number of cells in
/// degree k (k >= 0) and `boundaries[k]` the matrix of d_k : C_k -> C_{k-1}
/// (boundaries[0] is the augmentation). Computes degrees 0 .. cells.size()-1.
HomologyProfile homology_from_boundaries(const std::vector<std::size_t>& cells,
                                         const std::vector<IntegerMatrix>& boundaries);

/// Reduced homology in all degrees 0..dim(L) via Smith normal form.
HomologyProfile reduced_homology(const FlagComplex& complex);
/// Same, restricted to degrees 0..max_degree (cheaper when only low degrees matter).
HomologyProfile reduced_homology(const FlagComplex& complex, int max_degree);

/// k = -1: nonempty. k >= 0: nonempty and H~_i = 0 for 0 <= i <= k.
bool is_k_acyclic(const FlagComplex& complex, int k);
/// Union-find style sweep of the 1-skeleton; no matrix work.
bool is_connected(const FlagComplex& complex);
/// H~_d(L) != 0.
bool top_homology_nontrivial(const FlagComplex& complex, int d);

/// Sum of (-1)^k l_k over the f-vector (no empty-simplex term).
long long euler_characteristic(const std::vector<std::size_t>& f_vector);

}  // namespace fiberscope
