#include "fiberscope/flag_complex.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "fiberscope/error.hpp"

namespace fiberscope {

FlagComplex FlagComplex::from_graph(std::size_t n, std::span<const Edge> edges,
                                    std::vector<std::string> labels, std::size_t vertex_cap) {
  if (n > vertex_cap) {
    throw Error(ErrorCode::TooLarge,
                std::to_string(n) + " vertices exceeds cap " + std::to_string(vertex_cap));
  }
  if (!labels.empty() && labels.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "label count does not match vertex count");
  }
  FlagComplex c;
  c.rows_.assign(n, VertexSet(n));
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge {" + std::to_string(a) + "," + std::to_string(b) + "} with n=" +
                      std::to_string(n));
    }
    if (a == b) throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(a));
    if (c.rows_[a].test(b)) {
      throw Error(ErrorCode::DuplicateEdge,
                  "{" + std::to_string(a) + "," + std::to_string(b) + "}");
    }
    c.rows_[a].set(b);
    c.rows_[b].set(a);
  }
  c.labels_ = labels.empty() ? std::vector<std::string>(n) : std::move(labels);
  return c;
}

std::size_t FlagComplex::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& r : rows_) twice += r.count();
  return twice / 2;
}

std::vector<Edge> FlagComplex::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t j = rows_[i].next(i); j < rows_.size(); j = rows_[i].next(j)) {
      out.emplace_back(i, j);
    }
  }
  return out;
}

bool FlagComplex::has_labels() const noexcept {
  return std::any_of(labels_.begin(), labels_.end(), [](const auto& s) { return !s.empty(); });
}

bool FlagComplex::is_simplex(std::span<const std::size_t> vertices) const {
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    if (vertices[a] >= vertex_count()) return false;
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (vertices[a] == vertices[b] || !adjacent(vertices[a], vertices[b])) return false;
    }
  }
  return true;
}

FlagComplex induced(const FlagComplex& complex, const VertexSet& subset) {
  if (subset.width() != complex.vertex_count()) {
    throw Error(ErrorCode::WidthMismatch,
                "subset width " + std::to_string(subset.width()) + " vs complex " +
                    std::to_string(complex.vertex_count()));
  }
  const auto keep = subset.members();
  const std::size_t m = keep.size();
  FlagComplex out;
  out.rows_.assign(m, VertexSet(m));
  out.labels_.reserve(m);
  for (std::size_t a = 0; a < m; ++a) {
    const auto& row = complex.rows_[keep[a]];
    for (std::size_t b = a + 1; b < m; ++b) {
      if (row.test(keep[b])) {
        out.rows_[a].set(b);
        out.rows_[b].set(a);
      }
    }
    out.labels_.push_back(complex.labels_[keep[a]]);
  }
  return out;
}

namespace {

// Depth-first extension of cliques by higher-indexed common neighbours; visits
// every simplex exactly once in lexicographic order.
template <typename Visit>
void for_each_clique(const FlagComplex& c, Visit&& visit) {
  const std::size_t n = c.vertex_count();
  Simplex current;
  std::function<void(const VertexSet&)> extend = [&](const VertexSet& candidates) {
    candidates.for_each([&](std::size_t v) {
      current.push_back(v);
      visit(current);
      VertexSet next = candidates & c.neighbors(v);
      // keep only vertices above v to avoid revisiting permutations
      for (std::size_t u = next.first(); u < n && u <= v; u = next.next(u)) next.reset(u);
      if (next.any()) extend(next);
      current.pop_back();
    });
  };
  extend(VertexSet::full(n));
}

std::vector<std::size_t> degeneracy_order(const FlagComplex& c) {
  const std::size_t n = c.vertex_count();
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = c.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::vector<std::size_t>> buckets(max_deg + 1);
  for (std::size_t v = n; v-- > 0;) buckets[deg[v]].push_back(v);
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  std::size_t d = 0;
  while (order.size() < n) {
    d = 0;
    while (true) {
      while (!buckets[d].empty() && (removed[buckets[d].back()] || deg[buckets[d].back()] != d)) {
        buckets[d].pop_back();
      }
      if (!buckets[d].empty()) break;
      ++d;
    }
    const std::size_t v = buckets[d].back();
    buckets[d].pop_back();
    removed[v] = true;
    order.push_back(v);
    c.neighbors(v).for_each([&](std::size_t u) {
      if (!removed[u]) {
        --deg[u];
        buckets[deg[u]].push_back(u);
      }
    });
  }
  return order;
}

void bron_kerbosch_pivot(const FlagComplex& c, Simplex& r, VertexSet p, VertexSet x,
                         std::vector<Simplex>& out) {
  if (p.empty() && x.empty()) {
    Simplex s = r;
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
    return;
  }
  // pivot: vertex of P ∪ X with the most neighbours in P, lowest index on ties
  std::size_t pivot = 0;
  std::size_t best = 0;
  bool have = false;
  (p | x).for_each([&](std::size_t u) {
    const std::size_t k = (p & c.neighbors(u)).count();
    if (!have || k > best) {
      pivot = u;
      best = k;
      have = true;
    }
  });
  const VertexSet branch = p - c.neighbors(pivot);
  branch.for_each([&](std::size_t v) {
    r.push_back(v);
    bron_kerbosch_pivot(c, r, p & c.neighbors(v), x & c.neighbors(v), out);
    r.pop_back();
    p.reset(v);
    x.set(v);
  });
}

}  // namespace

int dimension(const FlagComplex& complex) {
  if (complex.empty()) return -1;
  std::size_t best = 0;
  for (const auto& s : maximal_simplices(complex)) best = std::max(best, s.size());
  return static_cast<int>(best) - 1;
}

std::vector<std::size_t> f_vector(const FlagComplex& complex) {
  std::vector<std::size_t> f;
  for_each_clique(complex, [&](const Simplex& s) {
    if (f.size() < s.size()) f.resize(s.size(), 0);
    ++f[s.size() - 1];
  });
  return f;
}

std::vector<Simplex> simplices(const FlagComplex& complex, std::size_t dim) {
  std::vector<Simplex> out;
  if (dim == 0) {
    for (std::size_t v = 0; v < complex.vertex_count(); ++v) out.push_back({v});
    return out;
  }
  if (dim == 1) {
    for (const auto& [a, b] : complex.edges()) out.push_back({a, b});
    return out;
  }
  for_each_clique(complex, [&](const Simplex& s) {
    if (s.size() == dim + 1) out.push_back(s);
  });
  return out;
}

std::vector<Simplex> maximal_simplices(const FlagComplex& complex) {
  const std::size_t n = complex.vertex_count();
  std::vector<Simplex> out;
  if (n == 0) return out;
  const auto order = degeneracy_order(complex);
  std::vector<std::size_t> position(n);
  for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;
  Simplex r;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = order[i];
    VertexSet p(n);
    VertexSet x(n);
    complex.neighbors(v).for_each([&](std::size_t u) {
      if (position[u] > i) {
        p.set(u);
      } else {
        x.set(u);
      }
    });
    r.assign(1, v);
    bron_kerbosch_pivot(complex, r, std::move(p), std::move(x), out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational charney_davis(const FlagComplex& complex, int n) {
  if (n < 0) throw Error(ErrorCode::DegreeOutOfRange, "charney_davis requires n >= 0");
  const auto f = f_vector(complex);
  Rational kappa = 1;  // k = -1 term
  Rational factor = 1;
  for (int k = 0; k <= n; ++k) {
    factor *= Rational(-1, 2);
    const std::size_t lk = static_cast<std::size_t>(k) < f.size() ? f[static_cast<std::size_t>(k)] : 0;
    kappa += factor * lk;
  }
  return kappa;
}

bool is_proper_coloring(const FlagComplex& complex, std::span<const std::size_t> color_of) {
  if (color_of.size() != complex.vertex_count()) return false;
  for (const auto& [a, b] : complex.edges()) {
    if (color_of[a] == color_of[b]) return false;
  }
  return true;
}

namespace {

// Exact colouring by DSATUR branch and bound.
class DsaturSolver {
 public:
  explicit DsaturSolver(const FlagComplex& c) : c_(c), n_(c.vertex_count()) {}

  Coloring solve() {
    Coloring best;
    if (n_ == 0) return best;
    std::size_t lower = 0;
    for (const auto& s : maximal_simplices(c_)) lower = std::max(lower, s.size());

    color_.assign(n_, kNone);
    best_colors_ = greedy_upper_bound(best_coloring_);
    lower_ = lower;
    if (best_colors_ > lower_) {
      neighbor_color_count_.assign(n_, std::vector<std::size_t>(best_colors_, 0));
      saturation_.assign(n_, 0);
      color_.assign(n_, kNone);
      branch(0, 0);
    }
    best.colors = best_colors_;
    best.color_of = best_coloring_;
    return best;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t pick_vertex() const {
    std::size_t pick = kNone;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] != kNone) continue;
      if (pick == kNone || saturation_[v] > saturation_[pick] ||
          (saturation_[v] == saturation_[pick] && c_.degree(v) > c_.degree(pick))) {
        pick = v;
      }
    }
    return pick;
  }

  std::size_t greedy_upper_bound(std::vector<std::size_t>& coloring) {
    const std::size_t cap = n_ + 1;
    neighbor_color_count_.assign(n_, std::vector<std::size_t>(cap, 0));
    saturation_.assign(n_, 0);
    std::size_t used = 0;
    for (std::size_t step = 0; step < n_; ++step) {
      const std::size_t v = pick_vertex();
      std::size_t col = 0;
      while (neighbor_color_count_[v][col] != 0) ++col;
      assign(v, col);
      used = std::max(used, col + 1);
    }
    coloring = color_;
    return used;
  }

  void assign(std::size_t v, std::size_t col) {
    color_[v] = col;
    c_.neighbors(v).for_each([&](std::size_t u) {
      if (neighbor_color_count_[u][col]++ == 0) ++saturation_[u];
    });
  }

  void unassign(std::size_t v) {
    const std::size_t col = color_[v];
    color_[v] = kNone;
    c_.neighbors(v).for_each([&](std::size_t u) {
      if (--neighbor_color_count_[u][col] == 0) --saturation_[u];
    });
  }

  void branch(std::size_t colored, std::size_t used) {
    if (best_colors_ == lower_) return;
    if (colored == n_) {
      if (used < best_colors_) {
        best_colors_ = used;
        best_coloring_ = color_;
      }
      return;
    }
    const std::size_t v = pick_vertex();
    const std::size_t limit = std::min(used + 1, best_colors_ - 1);
    for (std::size_t col = 0; col < limit; ++col) {
      if (neighbor_color_count_[v][col] != 0) continue;
      assign(v, col);
      branch(colored + 1, std::max(used, col + 1));
      unassign(v);
      if (best_colors_ == lower_) return;
    }
  }

  const FlagComplex& c_;
  std::size_t n_;
  std::size_t lower_ = 0;
  std::size_t best_colors_ = 0;
  std::vector<std::size_t> best_coloring_;
  std::vector<std::size_t> color_;
  std::vector<std::vector<std::size_t>> neighbor_color_count_;
  std::vector<std::size_t> saturation_;
};

}  // namespace

Coloring chromatic_number(const FlagComplex& complex) { return DsaturSolver(complex).solve(); }

GirthInfo girth_and_square_free(const FlagComplex& complex) {
  const std::size_t n = complex.vertex_count();
  GirthInfo info;
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n), parent(n);
  for (std::size_t root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[root] = 0;
    parent[root] = kUnseen;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      if (info.girth && 2 * dist[u] + 1 >= *info.girth) break;
      complex.neighbors(u).for_each([&](std::size_t w) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          const std::size_t len = dist[u] + dist[w] + 1;
          if (!info.girth || len < *info.girth) info.girth = len;
        }
      });
    }
  }

  // induced square a-b-c-d: a, c non-adjacent with two non-adjacent common neighbours
  for (std::size_t a = 0; a < n && info.square_free; ++a) {
    VertexSet seen(n);
    complex.neighbors(a).for_each([&](std::size_t b) {
      complex.neighbors(b).for_each([&](std::size_t c) {
        if (!info.square_free || c <= a || complex.adjacent(a, c) || seen.test(c)) return;
        seen.set(c);
        const VertexSet common = complex.neighbors(a) & complex.neighbors(c);
        for (std::size_t x = common.first(); x < n && info.square_free; x = common.next(x)) {
          const VertexSet rest = common - complex.neighbors(x);
          if (rest.next(x) < n) info.square_free = false;
        }
      });
    });
  }
  return info;
}

LinkStar link_star(const FlagComplex& complex, std::span<const std::size_t> simplex) {
  if (simplex.empty() || !complex.is_simplex(simplex)) {
    throw Error(ErrorCode::NotASimplex, "vertex list is not a simplex of the complex");
  }
  VertexSet link = complex.all_vertices();
  VertexSet sigma(complex.vertex_count());
  for (auto v : simplex) {
    link &= complex.neighbors(v);
    sigma.set(v);
  }
  VertexSet star = link | sigma;
  return LinkStar{link, star, induced(complex, link), induced(complex, star)};
}

std::size_t component_count(const FlagComplex& complex) {
  const std::size_t n = complex.vertex_count();
  VertexSet unvisited = complex.all_vertices();
  std::size_t components = 0;
  while (unvisited.any()) {
    ++components;
    VertexSet frontier(n);
    frontier.set(unvisited.first());
    unvisited -= frontier;
    while (frontier.any()) {
      VertexSet next(n);
      frontier.for_each([&](std::size_t v) { next |= complex.neighbors(v); });
      next &= unvisited;
      unvisited -= next;
      frontier = std::move(next);
    }
  }
  return components;
}

bool is_chamber_complex(const FlagComplex& complex, int d) {
  if (complex.empty() || d < 0) return false;
  const auto maximal = maximal_simplices(complex);
  const auto size = static_cast<std::size_t>(d) + 1;
  for (const auto& s : maximal) {
    if (s.size() != size) return false;
  }
  if (size == 1) return true;  // points share the empty face
  std::vector<std::size_t> parent(maximal.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<Simplex, std::size_t> face_owner;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    for (std::size_t drop = 0; drop < size; ++drop) {
      Simplex face;
      for (std::size_t j = 0; j < size; ++j) {
        if (j != drop) face.push_back(maximal[i][j]);
      }
      auto [it, inserted] = face_owner.emplace(std::move(face), i);
      if (!inserted) parent[find(i)] = find(it->second);
    }
  }
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < maximal.size(); ++i) {
    if (find(i) != root) return false;
  }
  return true;
}

}  // namespace fiberscope
