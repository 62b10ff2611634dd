#include "fiberscope/magic_cube.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>

#include "fiberscope/error.hpp"

namespace fiberscope {

MagicCube::MagicCube(std::size_t n, std::size_t t) : n_(n), t_(t) {
  if (n == 0 || t == 0) throw Error(ErrorCode::InvalidArgument, "magic cube needs n >= 1 and t >= 1");
  std::uint64_t entries = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (__builtin_mul_overflow(entries, static_cast<std::uint64_t>(t), &entries) ||
        entries > (std::uint64_t{1} << 62)) {
      throw Error(ErrorCode::TooLarge, "cube index space exceeds 2^62");
    }
  }
  dense_ = entries <= kDenseLimit;
  if (dense_) dense_weights_.assign(entries, 0);
  axis_labels.assign(n, {});
}

std::uint64_t MagicCube::flatten(std::span<const std::size_t> index) const {
  if (index.size() != n_) throw Error(ErrorCode::WidthMismatch, "cube index has wrong arity");
  std::uint64_t flat = 0;
  for (auto x : index) {
    if (x >= t_) throw Error(ErrorCode::IndexOutOfRange, "cube index " + std::to_string(x));
    flat = flat * t_ + x;
  }
  return flat;
}

void MagicCube::unflatten(std::uint64_t flat, Index& out) const {
  out.resize(n_);
  for (std::size_t i = n_; i-- > 0;) {
    out[i] = static_cast<std::size_t>(flat % t_);
    flat /= t_;
  }
}

std::uint64_t MagicCube::weight(std::span<const std::size_t> index) const {
  const auto flat = flatten(index);
  if (dense_) return dense_weights_[flat];
  auto it = sparse_weights_.find(flat);
  return it == sparse_weights_.end() ? 0 : it->second;
}

void MagicCube::add(std::span<const std::size_t> index, std::uint64_t amount) {
  const auto flat = flatten(index);
  if (amount == 0) return;
  if (dense_) {
    dense_weights_[flat] += amount;
  } else {
    sparse_weights_[flat] += amount;
  }
  total_ += amount;
}

void MagicCube::set(std::span<const std::size_t> index, std::uint64_t value) {
  const auto old = weight(index);
  const auto flat = flatten(index);
  if (dense_) {
    dense_weights_[flat] = value;
  } else if (value == 0) {
    sparse_weights_.erase(flat);
  } else {
    sparse_weights_[flat] = value;
  }
  total_ = total_ - old + value;
}

MagicCube MagicCube::permuted(const std::vector<std::vector<std::size_t>>& perms) const {
  if (perms.size() != n_) throw Error(ErrorCode::WidthMismatch, "one permutation per axis required");
  for (const auto& p : perms) {
    std::vector<std::size_t> sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted.size() != t_ || sorted[i] != i) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    }
  }
  MagicCube out(n_, t_);
  Index target(n_);
  for_each_nonzero([&](const Index& idx, std::uint64_t w) {
    for (std::size_t i = 0; i < n_; ++i) target[i] = perms[i][idx[i]];
    out.add(target, w);
  });
  for (std::size_t i = 0; i < n_; ++i) {
    if (axis_labels[i].size() != t_) continue;
    out.axis_labels[i].assign(t_, 0);
    for (std::size_t x = 0; x < t_; ++x) out.axis_labels[i][perms[i][x]] = axis_labels[i][x];
  }
  return out;
}

namespace {

void check_panels(const Building& b, std::span<const std::size_t> panels) {
  std::set<std::size_t> seen;
  for (auto p : panels) {
    if (p >= b.panels().size()) throw Error(ErrorCode::IndexOutOfRange, "panel " + std::to_string(p));
    if (!seen.insert(p).second) throw Error(ErrorCode::DuplicatePanel, "panel " + std::to_string(p) + " repeated");
  }
  if (panels.empty()) throw Error(ErrorCode::InvalidArgument, "at least one panel required");
  if (!b.uniformly_thick()) throw Error(ErrorCode::InvalidArgument, "building is not uniformly thick");
}

// Per chamber, the axis indices of its projections onto each panel.
std::vector<MagicCube::Index> projection_tuples(const Building& b, std::span<const std::size_t> panels) {
  std::vector<MagicCube::Index> tuples(b.chamber_count(), MagicCube::Index(panels.size()));
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto& star = b.panel_star(panels[i]);
    for (std::size_t d = 0; d < b.chamber_count(); ++d) {
      const auto gate = project_to_panel(b, panels[i], d);
      tuples[d][i] = static_cast<std::size_t>(std::lower_bound(star.begin(), star.end(), gate) - star.begin());
    }
  }
  return tuples;
}

}  // namespace

MagicCube cube_from_panels(const Building& b, std::span<const std::size_t> panels) {
  check_panels(b, panels);
  const std::size_t t = b.thickness();
  MagicCube cube(panels.size(), t);
  for (std::size_t i = 0; i < panels.size(); ++i) cube.axis_labels[i] = b.panel_star(panels[i]);
  for (const auto& tuple : projection_tuples(b, panels)) cube.add(tuple, 1);
  return cube;
}

std::uint64_t verify_magic(const MagicCube& cube) {
  const std::size_t n = cube.dimension();
  const std::size_t t = cube.side();
  std::vector<std::vector<std::uint64_t>> slices(n, std::vector<std::uint64_t>(t, 0));
  cube.for_each_nonzero([&](const MagicCube::Index& idx, std::uint64_t w) {
    for (std::size_t i = 0; i < n; ++i) slices[i][idx[i]] += w;
  });
  const std::uint64_t expected = slices[0][0];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < t; ++x) {
      if (slices[i][x] != expected) {
        throw Error(ErrorCode::NotMagic, "axis " + std::to_string(i) + " index " + std::to_string(x) +
                                             " observed " + std::to_string(slices[i][x]) + " expected " +
                                             std::to_string(expected));
      }
    }
  }
  return expected;
}

namespace {

class ZeroBlockSearch {
 public:
  ZeroBlockSearch(const MagicCube& cube) : n_(cube.dimension()), t_(cube.side()) {
    // zero mask over the last axis for every prefix over the first n-1 axes
    std::size_t prefixes = 1;
    for (std::size_t i = 0; i + 1 < n_; ++i) prefixes *= t_;
    const std::uint64_t full = t_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t_) - 1;
    std::vector<std::uint64_t> masks(prefixes, full);
    cube.for_each_nonzero([&](const MagicCube::Index& idx, std::uint64_t) {
      std::size_t prefix = 0;
      for (std::size_t i = 0; i + 1 < n_; ++i) prefix = prefix * t_ + idx[i];
      masks[prefix] &= ~(std::uint64_t{1} << idx[n_ - 1]);
    });
    chosen_.assign(n_ - 1, {});
    search(0, masks, t_);
  }

  std::size_t best() const { return best_; }
  const std::vector<std::vector<std::size_t>>& witness() const { return witness_; }

 private:
  // `tensor` holds masks indexed by the remaining prefix axes level..n-2.
  void search(std::size_t level, const std::vector<std::uint64_t>& tensor, std::size_t min_size) {
    if (level + 1 == n_) {
      const auto z = tensor[0];
      const std::size_t k = std::min<std::size_t>(min_size, static_cast<std::size_t>(std::popcount(z)));
      if (k > best_) {
        best_ = k;
        witness_.assign(n_, {});
        for (std::size_t i = 0; i + 1 < n_; ++i) {
          witness_[i].assign(chosen_[i].begin(), chosen_[i].begin() + static_cast<std::ptrdiff_t>(k));
        }
        for (std::size_t x = 0; x < t_ && witness_[n_ - 1].size() < k; ++x) {
          if (z & (std::uint64_t{1} << x)) witness_[n_ - 1].push_back(x);
        }
      }
      return;
    }
    const std::size_t stride = tensor.size() / t_;
    const std::uint64_t full = t_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t_) - 1;
    std::vector<std::uint64_t> collapsed(stride, full);
    extend(level, tensor, stride, 0, collapsed, min_size);
  }

  void extend(std::size_t level, const std::vector<std::uint64_t>& tensor, std::size_t stride, std::size_t start,
              const std::vector<std::uint64_t>& collapsed, std::size_t min_size) {
    auto& chosen = chosen_[level];
    if (!chosen.empty() && chosen.size() > best_) search(level + 1, collapsed, std::min(min_size, chosen.size()));
    for (std::size_t a = start; a < t_; ++a) {
      if (chosen.size() + (t_ - a) <= best_) break;
      std::vector<std::uint64_t> next(stride);
      std::uint64_t any = 0;
      for (std::size_t r = 0; r < stride; ++r) {
        next[r] = collapsed[r] & tensor[a * stride + r];
        any |= next[r];
      }
      if (static_cast<std::size_t>(std::popcount(any)) <= best_) continue;
      chosen.push_back(a);
      extend(level, tensor, stride, a + 1, next, min_size);
      chosen.pop_back();
    }
  }

  std::size_t n_;
  std::size_t t_;
  std::size_t best_ = 0;
  std::vector<std::vector<std::size_t>> chosen_;
  std::vector<std::vector<std::size_t>> witness_;
};

ZeroBlock greedy_zero_block(const MagicCube& cube) {
  const std::size_t n = cube.dimension();
  const std::size_t t = cube.side();
  std::vector<std::vector<bool>> alive(n, std::vector<bool>(t, true));
  std::vector<std::pair<MagicCube::Index, std::uint64_t>> entries;
  cube.for_each_nonzero([&](const MagicCube::Index& idx, std::uint64_t w) { entries.emplace_back(idx, w); });
  while (true) {
    std::vector<std::vector<std::uint64_t>> mass(n, std::vector<std::uint64_t>(t, 0));
    bool any = false;
    for (const auto& [idx, w] : entries) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i) inside = alive[i][idx[i]];
      if (!inside) continue;
      any = true;
      for (std::size_t i = 0; i < n; ++i) mass[i][idx[i]] += w;
    }
    if (!any) break;
    std::size_t bi = 0;
    std::size_t bx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t x = 0; x < t; ++x) {
        if (mass[i][x] > mass[bi][bx]) {
          bi = i;
          bx = x;
        }
      }
    }
    alive[bi][bx] = false;
  }
  ZeroBlock out;
  out.exact = false;
  out.k = t;
  for (std::size_t i = 0; i < n; ++i) {
    out.k = std::min<std::size_t>(out.k, static_cast<std::size_t>(std::count(alive[i].begin(), alive[i].end(), true)));
  }
  out.axes.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < t && out.axes[i].size() < out.k; ++x) {
      if (alive[i][x]) out.axes[i].push_back(x);
    }
  }
  return out;
}

}  // namespace

ZeroBlock max_zero_block(const MagicCube& cube) {
  if (cube.total() == 0) throw Error(ErrorCode::ZeroWeightCube, "cube has zero total weight");
  const std::size_t n = cube.dimension();
  const std::size_t t = cube.side();
  ZeroBlock out;
  if (n == 1) {
    out.axes.assign(1, {});
    for (std::size_t x = 0; x < t; ++x) {
      const std::size_t idx[1] = {x};
      if (cube.weight(idx) == 0) out.axes[0].push_back(x);
    }
    out.k = out.axes[0].size();
  } else {
    const std::uint64_t bits = static_cast<std::uint64_t>(t) * (n - 1);
    if (t <= 64 && bits < 64 && (std::uint64_t{1} << bits) <= kZeroBlockExactLimit) {
      ZeroBlockSearch search(cube);
      out.k = search.best();
      out.axes = search.best() ? search.witness() : std::vector<std::vector<std::size_t>>(n);
    } else {
      out = greedy_zero_block(cube);
    }
  }
  out.bound_holds = out.k * (1 + n * n) < n * n * t;
  return out;
}

std::size_t diagonal_guarantee(std::size_t n, std::size_t t) {
  const std::size_t d = 1 + n * n;
  return (t + d - 1) / d;
}

namespace {

// Completes per-axis permutations from the chosen diagonal entries.
Diagonal diagonal_from_entries(std::size_t n, std::size_t t, const std::vector<MagicCube::Index>& entries) {
  Diagonal out;
  out.length = entries.size();
  out.perms.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> used(t, false);
    for (const auto& e : entries) {
      out.perms[i].push_back(e[i]);
      used[e[i]] = true;
    }
    for (std::size_t x = 0; x < t; ++x) {
      if (!used[x]) out.perms[i].push_back(x);
    }
  }
  return out;
}

bool kuhn_augment(std::size_t row, const std::vector<std::vector<std::size_t>>& adj, std::vector<bool>& seen,
                  std::vector<std::size_t>& match_col) {
  for (auto c : adj[row]) {
    if (seen[c]) continue;
    seen[c] = true;
    if (match_col[c] == SIZE_MAX || kuhn_augment(match_col[c], adj, seen, match_col)) {
      match_col[c] = row;
      return true;
    }
  }
  return false;
}

// Largest set of positive entries with pairwise distinct coordinates, by backtracking under a node budget.
std::vector<MagicCube::Index> disjoint_entries(const std::vector<MagicCube::Index>& positive, std::size_t n,
                                               std::size_t t, std::size_t target, std::size_t budget) {
  std::vector<std::vector<bool>> used(n, std::vector<bool>(t, false));
  std::vector<MagicCube::Index> current;
  std::vector<MagicCube::Index> best;
  std::size_t nodes = 0;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) {
    if (current.size() > best.size()) best = current;
    if (best.size() >= target) return true;
    if (++nodes > budget) return true;
    for (std::size_t e = start; e < positive.size(); ++e) {
      const auto& idx = positive[e];
      bool free = true;
      for (std::size_t i = 0; i < n && free; ++i) free = !used[i][idx[i]];
      if (!free) continue;
      for (std::size_t i = 0; i < n; ++i) used[i][idx[i]] = true;
      current.push_back(idx);
      const bool stop = rec(e + 1);
      current.pop_back();
      for (std::size_t i = 0; i < n; ++i) used[i][idx[i]] = false;
      if (stop) return true;
    }
    return false;
  };
  rec(0);
  return best;
}

}  // namespace

Diagonal positive_diagonal(const MagicCube& cube) {
  if (cube.total() == 0) throw Error(ErrorCode::ZeroWeightCube, "cube has zero total weight");
  const std::size_t n = cube.dimension();
  const std::size_t t = cube.side();
  std::vector<MagicCube::Index> positive;
  cube.for_each_nonzero([&](const MagicCube::Index& idx, std::uint64_t) { positive.push_back(idx); });

  std::vector<MagicCube::Index> chosen;
  if (n == 2) {
    std::vector<std::vector<std::size_t>> adj(t);
    for (const auto& idx : positive) adj[idx[0]].push_back(idx[1]);
    std::vector<std::size_t> match_col(t, SIZE_MAX);
    for (std::size_t r = 0; r < t; ++r) {
      std::vector<bool> seen(t, false);
      kuhn_augment(r, adj, seen, match_col);
    }
    std::vector<MagicCube::Index> pairs;
    for (std::size_t c = 0; c < t; ++c) {
      if (match_col[c] != SIZE_MAX) pairs.push_back({match_col[c], c});
    }
    std::sort(pairs.begin(), pairs.end());
    chosen = std::move(pairs);
  } else {
    std::vector<std::vector<bool>> used(n, std::vector<bool>(t, false));
    for (const auto& idx : positive) {
      bool free = true;
      for (std::size_t i = 0; i < n && free; ++i) free = !used[i][idx[i]];
      if (!free) continue;
      for (std::size_t i = 0; i < n; ++i) used[i][idx[i]] = true;
      chosen.push_back(idx);
    }
    // a maximal set already meets the guarantee for magic cubes; non-magic input may need a search
    const std::size_t need = diagonal_guarantee(n, t);
    if (chosen.size() < need) {
      auto better = disjoint_entries(positive, n, t, need, 1'000'000);
      if (better.size() > chosen.size()) chosen = std::move(better);
    }
  }
  return diagonal_from_entries(n, t, chosen);
}

std::vector<std::size_t> independent_chambers(const Building& b, std::span<const std::size_t> panels,
                                              std::size_t m) {
  check_panels(b, panels);
  if (m == 0) return {};
  const std::size_t n = panels.size();
  const std::size_t t = b.thickness();
  const auto tuples = projection_tuples(b, panels);
  MagicCube cube(n, t);
  for (const auto& tuple : tuples) cube.add(tuple, 1);

  const auto diag = positive_diagonal(cube);
  std::vector<MagicCube::Index> entries;
  for (std::size_t j = 0; j < diag.length; ++j) {
    MagicCube::Index idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = diag.perms[i][j];
    entries.push_back(std::move(idx));
  }
  if (entries.size() < m && n > 2) {
    std::vector<MagicCube::Index> positive;
    cube.for_each_nonzero([&](const MagicCube::Index& idx, std::uint64_t) { positive.push_back(idx); });
    auto better = disjoint_entries(positive, n, t, m, 5'000'000);
    if (better.size() > entries.size()) entries = std::move(better);
  }
  if (entries.size() < m) {
    throw Error(ErrorCode::NotFound, "found only " + std::to_string(entries.size()) + " independent chambers of " +
                                         std::to_string(m));
  }
  entries.resize(m);

  std::vector<std::size_t> result;
  for (const auto& idx : entries) {
    auto it = std::find(tuples.begin(), tuples.end(), idx);
    result.push_back(static_cast<std::size_t>(it - tuples.begin()));
  }
  for (auto panel : panels) {
    std::set<std::size_t> gates;
    for (auto d : result) {
      if (!gates.insert(project_to_panel(b, panel, d)).second) {
        throw Error(ErrorCode::NotFound, "projection collision on panel " + std::to_string(panel));
      }
    }
  }
  return result;
}

std::vector<std::size_t> common_opposites(const Building& b, std::span<const std::size_t> base) {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < b.chamber_count(); ++d) {
    if (std::all_of(base.begin(), base.end(), [&](std::size_t e) { return is_opposite(b, e, d); })) out.push_back(d);
  }
  return out;
}

namespace {

struct HullUnion {
  std::vector<std::size_t> chambers;  // sorted
  VertexSet support;
};

HullUnion hull_union(const Building& b, std::span<const std::size_t> base, std::size_t d) {
  std::set<std::size_t> all;
  for (auto e : base) {
    for (auto c : convex_hull(b, e, d)) all.insert(c);
  }
  HullUnion h{{all.begin(), all.end()}, VertexSet(b.vertex_count())};
  for (auto c : h.chambers) h.support |= b.chamber_vertices(c);
  return h;
}

}  // namespace

Spread opposite_spread(const Building& b, std::span<const std::size_t> base, std::size_t l) {
  if (base.empty()) throw Error(ErrorCode::InvalidArgument, "opposite_spread needs at least one chamber");
  for (auto e : base) b.check_chamber(e);
  std::vector<std::size_t> base_sorted(base.begin(), base.end());
  std::sort(base_sorted.begin(), base_sorted.end());
  base_sorted.erase(std::unique(base_sorted.begin(), base_sorted.end()), base_sorted.end());
  VertexSet base_support(b.vertex_count());
  for (auto e : base_sorted) base_support |= b.chamber_vertices(e);

  auto candidates = common_opposites(b, base);
  std::vector<int> total(b.chamber_count(), 0);
  for (auto d : candidates) {
    for (auto e : base) total[d] += b.distance(e, d);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t x, std::size_t y) { return total[x] > total[y]; });

  auto compatible = [&](const HullUnion& x, const HullUnion& y) {
    std::vector<std::size_t> common;
    std::set_intersection(x.chambers.begin(), x.chambers.end(), y.chambers.begin(), y.chambers.end(),
                          std::back_inserter(common));
    return common == base_sorted && (x.support & y.support) == base_support;
  };

  Spread out;
  std::vector<HullUnion> accepted;
  for (auto d : candidates) {
    if (out.chambers.size() >= l) break;
    auto hull = hull_union(b, base, d);
    if (std::all_of(accepted.begin(), accepted.end(), [&](const HullUnion& h) { return compatible(h, hull); })) {
      out.chambers.push_back(d);
      accepted.push_back(std::move(hull));
    }
  }
  // independent re-check of every pair
  for (std::size_t i = 0; i < out.chambers.size(); ++i) {
    for (std::size_t j = i + 1; j < out.chambers.size(); ++j) {
      if (!compatible(hull_union(b, base, out.chambers[i]), hull_union(b, base, out.chambers[j]))) {
        throw Error(ErrorCode::NotFound, "spread verification failed");
      }
    }
  }
  out.complete = out.chambers.size() >= l;
  return out;
}

}  // namespace fiberscope
