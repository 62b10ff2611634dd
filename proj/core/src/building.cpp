#include "fiberscope/building.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

#include "fiberscope/error.hpp"

namespace fiberscope {

namespace {

int mod_inverse(int a, int p) {
  // Fermat: a^(p-2) mod p
  long long result = 1;
  long long base = a % p;
  int e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<int>(result);
}

// In-place RREF over F_p; returns the nonzero rows.
std::vector<std::vector<int>> rref(std::vector<std::vector<int>> rows, int p, int ambient) {
  std::size_t lead = 0;
  for (int col = 0; col < ambient && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < rows.size() && rows[pivot][col] % p == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    const int inv = mod_inverse(rows[lead][col], p);
    for (auto& x : rows[lead]) x = static_cast<int>(static_cast<long long>(x) * inv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col] == 0) continue;
      const int f = rows[r][col];
      for (int c = 0; c < ambient; ++c) {
        rows[r][c] = static_cast<int>(((rows[r][c] - static_cast<long long>(f) * rows[lead][c]) % p + p) % p);
      }
    }
    ++lead;
  }
  rows.resize(lead);
  return rows;
}

// All RREF bases of r-dimensional subspaces of F_p^n.
void enumerate_subspaces(int p, int n, int r, std::vector<Subspace>& out) {
  std::vector<int> pivots(static_cast<std::size_t>(r));
  std::function<void(int, int)> choose_pivots = [&](int idx, int start) {
    if (idx == r) {
      // free positions: (row i, column c) with c > pivots[i] and c not a pivot column
      std::vector<std::pair<int, int>> free;
      for (int i = 0; i < r; ++i) {
        for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < n; ++c) {
          if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(i, c);
        }
      }
      std::vector<int> values(free.size(), 0);
      while (true) {
        Subspace s;
        s.p = p;
        s.ambient = n;
        s.basis.assign(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(n), 0));
        for (int i = 0; i < r; ++i) s.basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])] = 1;
        for (std::size_t f = 0; f < free.size(); ++f) {
          s.basis[static_cast<std::size_t>(free[f].first)][static_cast<std::size_t>(free[f].second)] = values[f];
        }
        out.push_back(std::move(s));
        std::size_t pos = 0;
        while (pos < values.size() && ++values[pos] == p) values[pos++] = 0;
        if (pos == values.size()) break;
      }
      return;
    }
    for (int c = start; c <= n - (r - idx); ++c) {
      pivots[static_cast<std::size_t>(idx)] = c;
      choose_pivots(idx + 1, c + 1);
    }
  };
  choose_pivots(0, 0);
}

long long gaussian_binomial(int n, int r, int p) {
  long long num = 1;
  long long den = 1;
  for (int i = 0; i < r; ++i) {
    long long a = 1, b = 1;
    for (int j = 0; j < n - i; ++j) a *= p;
    for (int j = 0; j < i + 1; ++j) b *= p;
    num *= (a - 1);
    den *= (b - 1);
  }
  return num / den;
}

}  // namespace

std::string Subspace::label() const {
  std::ostringstream out;
  out << dim() << ':';
  for (std::size_t r = 0; r < basis.size(); ++r) {
    if (r) out << '|';
    for (std::size_t c = 0; c < basis[r].size(); ++c) {
      if (c) out << ',';
      out << basis[r][c];
    }
  }
  return out.str();
}

Subspace span_of(const std::vector<std::vector<int>>& vectors, int p, int ambient) {
  std::vector<std::vector<int>> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    std::vector<int> row(static_cast<std::size_t>(ambient));
    for (int c = 0; c < ambient; ++c) row[static_cast<std::size_t>(c)] = ((v.at(static_cast<std::size_t>(c)) % p) + p) % p;
    rows.push_back(std::move(row));
  }
  return Subspace{p, ambient, rref(std::move(rows), p, ambient)};
}

std::size_t sum_dimension(const Subspace& a, const Subspace& b) {
  auto rows = a.basis;
  rows.insert(rows.end(), b.basis.begin(), b.basis.end());
  return rref(std::move(rows), a.p, a.ambient).size();
}

bool contains(const Subspace& outer, const Subspace& inner) {
  return sum_dimension(outer, inner) == outer.dim();
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Building build_typeA(int k, int p, const BuildOptions& options) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "rank k must be >= 1");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  const int n = k + 1;
  long long vertex_total = 0;
  long long chamber_total = 1;
  for (int r = 1; r <= k; ++r) vertex_total += gaussian_binomial(n, r, p);
  for (int r = 1; r <= k; ++r) chamber_total *= gaussian_binomial(r + 1, 1, p);
  if (vertex_total > static_cast<long long>(options.vertex_cap)) {
    throw Error(ErrorCode::TooLarge, "A_" + std::to_string(k) + "(F_" + std::to_string(p) + ") has " +
                                         std::to_string(vertex_total) + " vertices");
  }
  if (chamber_total > static_cast<long long>(options.chamber_cap)) {
    throw Error(ErrorCode::TooLarge, "A_" + std::to_string(k) + "(F_" + std::to_string(p) + ") has " +
                                         std::to_string(chamber_total) + " chambers");
  }

  Building b;
  b.k_ = k;
  b.p_ = p;
  std::vector<std::size_t> dim_start;
  for (int r = 1; r <= k; ++r) {
    dim_start.push_back(b.subspaces_.size());
    std::vector<Subspace> layer;
    enumerate_subspaces(p, n, r, layer);
    std::sort(layer.begin(), layer.end());
    b.subspaces_.insert(b.subspaces_.end(), layer.begin(), layer.end());
  }
  dim_start.push_back(b.subspaces_.size());
  const std::size_t nv = b.subspaces_.size();

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = i + 1; j < nv; ++j) {
      if (b.subspaces_[i].dim() < b.subspaces_[j].dim() && contains(b.subspaces_[j], b.subspaces_[i])) {
        edges.emplace_back(i, j);
      }
    }
  }
  std::vector<std::string> labels;
  labels.reserve(nv);
  for (const auto& s : b.subspaces_) labels.push_back(s.label());
  b.complex_ = FlagComplex::from_graph(nv, edges, std::move(labels), options.vertex_cap);

  // complete flags by extension through containment
  std::vector<std::size_t> flag;
  std::function<void(int)> extend = [&](int level) {
    if (level == k) {
      b.chambers_.push_back(flag);
      return;
    }
    const std::size_t lo = dim_start[static_cast<std::size_t>(level)];
    const std::size_t hi = dim_start[static_cast<std::size_t>(level) + 1];
    for (std::size_t v = lo; v < hi; ++v) {
      if (!flag.empty() && !b.complex_.adjacent(flag.back(), v)) continue;
      flag.push_back(v);
      extend(level + 1);
      flag.pop_back();
    }
  };
  extend(0);

  std::map<std::vector<std::size_t>, std::size_t> panel_index;
  std::vector<std::pair<std::vector<std::size_t>, std::size_t>> panel_list;
  for (const auto& ch : b.chambers_) {
    for (int t = 1; t <= k; ++t) {
      std::vector<std::size_t> face;
      for (int i = 0; i < k; ++i) {
        if (i != t - 1) face.push_back(ch[static_cast<std::size_t>(i)]);
      }
      if (panel_index.emplace(face, 0).second) panel_list.emplace_back(face, static_cast<std::size_t>(t));
    }
  }
  std::sort(panel_list.begin(), panel_list.end());
  for (std::size_t i = 0; i < panel_list.size(); ++i) {
    panel_index[panel_list[i].first] = i;
    b.panels_.push_back(Panel{panel_list[i].first, panel_list[i].second});
  }
  b.panel_star_.assign(b.panels_.size(), {});
  b.chamber_panels_.assign(b.chambers_.size(), {});
  b.vertex_chambers_.assign(nv, {});
  for (std::size_t c = 0; c < b.chambers_.size(); ++c) {
    const auto& ch = b.chambers_[c];
    for (auto v : ch) b.vertex_chambers_[v].push_back(c);
    for (int t = 1; t <= k; ++t) {
      std::vector<std::size_t> face;
      for (int i = 0; i < k; ++i) {
        if (i != t - 1) face.push_back(ch[static_cast<std::size_t>(i)]);
      }
      const std::size_t pid = panel_index.at(face);
      b.chamber_panels_[c].push_back(pid);
      b.panel_star_[pid].push_back(c);
    }
  }
  b.chamber_neighbors_.assign(b.chambers_.size(), {});
  for (std::size_t c = 0; c < b.chambers_.size(); ++c) {
    for (auto pid : b.chamber_panels_[c]) {
      for (auto d : b.panel_star_[pid]) {
        if (d != c) b.chamber_neighbors_[c].push_back(d);
      }
    }
    std::sort(b.chamber_neighbors_[c].begin(), b.chamber_neighbors_[c].end());
  }

  if (options.distances) {
    const std::size_t nc = b.chambers_.size();
    b.distance_.assign(nc * nc, 0xFF);
    std::vector<std::size_t> queue;
    queue.reserve(nc);
    for (std::size_t src = 0; src < nc; ++src) {
      std::uint8_t* row = &b.distance_[src * nc];
      row[src] = 0;
      queue.clear();
      queue.push_back(src);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t u = queue[head];
        for (auto w : b.chamber_neighbors_[u]) {
          if (row[w] == 0xFF) {
            row[w] = static_cast<std::uint8_t>(row[u] + 1);
            b.diameter_ = std::max<int>(b.diameter_, row[w]);
            queue.push_back(w);
          }
        }
      }
    }
  }
  return b;
}

void Building::check_chamber(std::size_t chamber) const {
  if (chamber >= chambers_.size()) {
    throw Error(ErrorCode::UnknownChamber, "chamber " + std::to_string(chamber) + " of " +
                                               std::to_string(chambers_.size()));
  }
}

int Building::distance(std::size_t c, std::size_t d) const {
  check_chamber(c);
  check_chamber(d);
  if (distance_.empty()) throw Error(ErrorCode::InvalidArgument, "building built without distance table");
  return distance_[c * chambers_.size() + d];
}

std::size_t Building::thickness() const noexcept {
  std::size_t t = panel_star_.empty() ? 0 : panel_star_.front().size();
  for (const auto& s : panel_star_) t = std::min(t, s.size());
  return t;
}

bool Building::uniformly_thick() const noexcept {
  const std::size_t t = thickness();
  return std::all_of(panel_star_.begin(), panel_star_.end(), [t](const auto& s) { return s.size() == t; });
}

std::optional<std::size_t> Building::find_subspace(const Subspace& s) const {
  auto it = std::lower_bound(subspaces_.begin(), subspaces_.end(), s, [](const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a < b;
  });
  if (it == subspaces_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - subspaces_.begin());
}

std::optional<std::size_t> Building::find_chamber(std::span<const std::size_t> vertices) const {
  std::vector<std::size_t> key(vertices.begin(), vertices.end());
  std::sort(key.begin(), key.end());
  auto it = std::lower_bound(chambers_.begin(), chambers_.end(), key);
  if (it == chambers_.end() || *it != key) return std::nullopt;
  return static_cast<std::size_t>(it - chambers_.begin());
}

std::optional<std::size_t> Building::find_panel(std::span<const std::size_t> vertices) const {
  std::vector<std::size_t> key(vertices.begin(), vertices.end());
  std::sort(key.begin(), key.end());
  auto it = std::lower_bound(panels_.begin(), panels_.end(), key,
                             [](const Panel& p, const std::vector<std::size_t>& k) { return p.vertices < k; });
  if (it == panels_.end() || it->vertices != key) return std::nullopt;
  return static_cast<std::size_t>(it - panels_.begin());
}

std::vector<std::size_t> Building::chambers_containing(std::span<const std::size_t> simplex) const {
  if (simplex.empty()) {
    std::vector<std::size_t> all(chambers_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  std::vector<std::size_t> result = vertex_chambers_.at(simplex[0]);
  for (std::size_t i = 1; i < simplex.size(); ++i) {
    const auto& other = vertex_chambers_.at(simplex[i]);
    std::vector<std::size_t> next;
    std::set_intersection(result.begin(), result.end(), other.begin(), other.end(), std::back_inserter(next));
    result = std::move(next);
  }
  return result;
}

VertexSet Building::chamber_vertices(std::size_t chamber) const {
  check_chamber(chamber);
  VertexSet s(vertex_count());
  for (auto v : chambers_[chamber]) s.set(v);
  return s;
}

int gallery_distance(const Building& b, std::size_t c, std::size_t d) { return b.distance(c, d); }

std::size_t projection(const Building& b, std::span<const std::size_t> simplex, std::size_t chamber) {
  b.check_chamber(chamber);
  if (!simplex.empty() && !b.complex().is_simplex(simplex)) {
    throw Error(ErrorCode::NotASimplex, "projection target is not a simplex of the building");
  }
  const auto star = b.chambers_containing(simplex);
  std::size_t best = star.front();
  int best_d = b.distance(best, chamber);
  bool unique = true;
  for (std::size_t i = 1; i < star.size(); ++i) {
    const int d = b.distance(star[i], chamber);
    if (d < best_d) {
      best = star[i];
      best_d = d;
      unique = true;
    } else if (d == best_d) {
      unique = false;
    }
  }
  if (!unique) {
    throw Error(ErrorCode::NonUniqueMinimizer,
                "several chambers of the star at distance " + std::to_string(best_d));
  }
  return best;
}

std::size_t project_to_panel(const Building& b, std::size_t panel, std::size_t chamber) {
  b.check_chamber(chamber);
  const auto& star = b.panel_star(panel);
  std::size_t best = star.front();
  int best_d = b.distance(best, chamber);
  bool unique = true;
  for (std::size_t i = 1; i < star.size(); ++i) {
    const int d = b.distance(star[i], chamber);
    if (d < best_d) {
      best = star[i];
      best_d = d;
      unique = true;
    } else if (d == best_d) {
      unique = false;
    }
  }
  if (!unique) {
    throw Error(ErrorCode::NonUniqueMinimizer, "panel " + std::to_string(panel) + " star has no unique gate");
  }
  return best;
}

bool is_opposite(const Building& b, std::size_t c, std::size_t d) { return b.distance(c, d) == b.diameter(); }

bool flags_transversal(const Building& b, std::size_t c, std::size_t d) {
  b.check_chamber(c);
  b.check_chamber(d);
  const auto& v = b.chambers()[c];
  const auto& w = b.chambers()[d];
  const std::size_t k = static_cast<std::size_t>(b.rank());
  for (std::size_t i = 0; i < k; ++i) {
    // V_{i+1} and W_{k-i} have complementary dimensions
    if (sum_dimension(b.subspaces()[v[i]], b.subspaces()[w[k - 1 - i]]) != k + 1) return false;
  }
  return true;
}

std::vector<std::size_t> opposite_chambers(const Building& b, std::size_t c) {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < b.chamber_count(); ++d) {
    if (is_opposite(b, c, d)) out.push_back(d);
  }
  return out;
}

VertexSet apartment_from_frame(const Building& b, std::span<const std::size_t> lines) {
  const int n = b.rank() + 1;
  if (lines.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::NotAFrame, "a frame needs exactly " + std::to_string(n) + " lines");
  }
  std::vector<std::vector<int>> vecs;
  for (auto l : lines) {
    if (l >= b.vertex_count() || b.subspaces()[l].dim() != 1) {
      throw Error(ErrorCode::NotAFrame, "vertex " + std::to_string(l) + " is not a line");
    }
    vecs.push_back(b.subspaces()[l].basis[0]);
  }
  if (span_of(vecs, b.prime(), n).dim() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::NotAFrame, "lines do not span the ambient space");
  }
  VertexSet out(b.vertex_count());
  const unsigned full = (1U << n) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    std::vector<std::vector<int>> subset;
    for (int i = 0; i < n; ++i) {
      if (mask & (1U << i)) subset.push_back(vecs[static_cast<std::size_t>(i)]);
    }
    const auto idx = b.find_subspace(span_of(subset, b.prime(), n));
    out.set(idx.value());
  }
  return out;
}

std::vector<std::size_t> convex_hull(const Building& b, std::size_t c, std::size_t d) {
  const int total = b.distance(c, d);
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < b.chamber_count(); ++e) {
    if (b.distance(c, e) + b.distance(e, d) == total) out.push_back(e);
  }
  return out;
}

CoverReport covers_by_apartments(const Building& b, const VertexSet& subset, std::size_t budget) {
  if (subset.width() != b.vertex_count()) {
    throw Error(ErrorCode::WidthMismatch, "subset width does not match building");
  }
  CoverReport report;
  std::vector<bool> inside(b.chamber_count(), false);
  std::vector<std::size_t> chambers_x;
  for (std::size_t c = 0; c < b.chamber_count(); ++c) {
    if (b.chamber_vertices(c).is_subset_of(subset)) {
      inside[c] = true;
      chambers_x.push_back(c);
    }
  }
  report.chambers_in_subcomplex = chambers_x.size();
  bool failure = chambers_x.empty();
  for (std::size_t i = 0; i < chambers_x.size() && i < budget; ++i) {
    const std::size_t e = chambers_x[i];
    ChamberCover entry{e, std::nullopt};
    for (auto d : chambers_x) {
      if (!is_opposite(b, e, d)) continue;
      const auto hull = convex_hull(b, e, d);
      if (std::all_of(hull.begin(), hull.end(), [&](std::size_t h) { return inside[h]; })) {
        entry.opposite = d;
        break;
      }
    }
    if (!entry.opposite) failure = true;
    report.results.push_back(entry);
  }
  if (failure) {
    report.verdict = CoverVerdict::NotCovered;
  } else if (report.results.size() < chambers_x.size()) {
    report.verdict = CoverVerdict::Inconclusive;
  } else {
    report.verdict = CoverVerdict::Covered;
  }
  return report;
}

std::string_view to_string(CoverVerdict v) noexcept {
  switch (v) {
    case CoverVerdict::Covered: return "covered";
    case CoverVerdict::NotCovered: return "not-covered";
    case CoverVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace fiberscope
