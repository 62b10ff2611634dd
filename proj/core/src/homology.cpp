#include "fiberscope/homology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fiberscope/error.hpp"

namespace fiberscope {

const DegreeHomology& HomologyProfile::at(std::size_t k) const {
  static const DegreeHomology kTrivial{};
  return k < degrees.size() ? degrees[k] : kTrivial;
}

std::string HomologyProfile::summary() const {
  if (!nonempty) return "empty";
  std::ostringstream out;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (k) out << ' ';
    out << 'H' << k << '=';
    const auto& h = degrees[k];
    if (h.trivial()) {
      out << '0';
      continue;
    }
    bool first = true;
    if (h.free_rank) {
      out << 'Z';
      if (h.free_rank > 1) out << '^' << h.free_rank;
      first = false;
    }
    for (const auto& t : h.torsion) {
      if (!first) out << '+';
      out << "Z/" << t;
      first = false;
    }
  }
  return out.str();
}

IntegerMatrix boundary_matrix(const FlagComplex& complex, int k) {
  const int dim = dimension(complex);
  if (k < 0 || k > dim + 1) {
    throw Error(ErrorCode::DegreeOutOfRange,
                "boundary degree " + std::to_string(k) + " for complex of dimension " +
                    std::to_string(dim));
  }
  if (k == 0) {
    IntegerMatrix aug(1, complex.vertex_count());
    for (std::size_t v = 0; v < complex.vertex_count(); ++v) aug(0, v) = 1;
    return aug;
  }
  const auto faces = simplices(complex, static_cast<std::size_t>(k - 1));
  const auto cells = k <= dim ? simplices(complex, static_cast<std::size_t>(k)) : std::vector<Simplex>{};
  std::map<Simplex, std::size_t> row_of;
  for (std::size_t i = 0; i < faces.size(); ++i) row_of.emplace(faces[i], i);
  IntegerMatrix m(faces.size(), cells.size());
  Simplex face;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& s = cells[c];
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      face.clear();
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (j != drop) face.push_back(s[j]);
      }
      m(row_of.at(face), c) = (drop % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

HomologyProfile homology_from_boundaries(const std::vector<std::size_t>& cells,
                                         const std::vector<IntegerMatrix>& boundaries) {
  HomologyProfile profile;
  profile.nonempty = !cells.empty() && cells[0] > 0;
  if (!profile.nonempty) return profile;
  const std::size_t top = cells.size();  // degrees 0..top-1
  std::vector<SmithForm> smith(top + 1);
  for (std::size_t k = 0; k <= top; ++k) {
    if (k < boundaries.size()) smith[k] = smith_normal_form(boundaries[k]);
  }
  profile.degrees.resize(top);
  for (std::size_t k = 0; k < top; ++k) {
    auto& h = profile.degrees[k];
    h.free_rank = cells[k] - smith[k].rank - smith[k + 1].rank;
    for (const auto& d : smith[k + 1].divisors) {
      if (d > 1) h.torsion.push_back(d);
    }
  }
  return profile;
}

HomologyProfile reduced_homology(const FlagComplex& complex) {
  return reduced_homology(complex, dimension(complex));
}

HomologyProfile reduced_homology(const FlagComplex& complex, int max_degree) {
  HomologyProfile profile;
  if (complex.empty()) return profile;
  const int dim = dimension(complex);
  const int top = std::min(max_degree, dim);
  if (top < 0) {
    profile.nonempty = true;
    return profile;
  }
  const auto f = f_vector(complex);
  std::vector<std::size_t> cells(f.begin(), f.begin() + top + 1);
  std::vector<IntegerMatrix> boundaries;
  for (int k = 0; k <= top + 1 && k <= dim + 1; ++k) boundaries.push_back(boundary_matrix(complex, k));
  return homology_from_boundaries(cells, boundaries);
}

bool is_k_acyclic(const FlagComplex& complex, int k) {
  if (complex.empty()) return false;
  if (k < 0) return true;
  const auto profile = reduced_homology(complex, k);
  for (int i = 0; i <= k; ++i) {
    if (!profile.trivial_at(static_cast<std::size_t>(i))) return false;
  }
  return true;
}

bool is_connected(const FlagComplex& complex) {
  return !complex.empty() && component_count(complex) == 1;
}

bool top_homology_nontrivial(const FlagComplex& complex, int d) {
  if (d < 0 || complex.empty()) return false;
  const auto profile = reduced_homology(complex, d);
  return !profile.trivial_at(static_cast<std::size_t>(d));
}

long long euler_characteristic(const std::vector<std::size_t>& f_vector) {
  long long chi = 0;
  for (std::size_t k = 0; k < f_vector.size(); ++k) {
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(f_vector[k]);
  }
  return chi;
}

}  // namespace fiberscope
