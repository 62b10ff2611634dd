#include "fiberscope/davis_morse.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>

#include "fiberscope/error.hpp"

namespace fiberscope {

Word NormalFormCache::normal_form(const Word& input) {
  if (auto it = memo_.find(input); it != memo_.end()) return it->second;
  Word current = input;
  while (true) {
    std::set<Word> seen{current};
    std::deque<Word> queue{current};
    std::optional<Word> shorter;
    while (!queue.empty() && !shorter) {
      const Word u = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        if (u[i] == u[i + 1]) {
          Word w = u;
          w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
          shorter = std::move(w);
          break;
        }
        if (complex_->adjacent(u[i], u[i + 1])) {
          Word w = u;
          std::swap(w[i], w[i + 1]);
          if (seen.insert(w).second) queue.push_back(std::move(w));
        }
      }
    }
    if (shorter) {
      current = std::move(*shorter);
      continue;
    }
    Word result = *seen.begin();
    memo_.emplace(input, result);
    return result;
  }
}

VertexSet CayleyBall::parity(std::size_t g) const {
  VertexSet p(complex_->vertex_count());
  for (auto v : word(g)) p.flip(v);
  return p;
}

std::optional<std::size_t> CayleyBall::find(const Word& normal_form) const {
  auto it = index_.find(normal_form);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> CayleyBall::neighbor(std::size_t g, std::size_t v) const {
  const std::size_t n = neighbors_.at(g).at(v);
  if (n == SIZE_MAX) return std::nullopt;
  return n;
}

std::optional<std::size_t> CayleyBall::multiply(std::size_t g, std::size_t x) const {
  Word w = word(g);
  w.insert(w.end(), word(x).begin(), word(x).end());
  return find(cache_->normal_form(w));
}

std::string CayleyBall::word_string(std::size_t g) const {
  const Word& w = word(g);
  if (w.empty()) return "e";
  std::string out;
  const bool letters = complex_->vertex_count() <= 26;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (letters) {
      out.push_back(static_cast<char>('a' + w[i]));
    } else {
      if (i) out.push_back('.');
      out += "x" + std::to_string(w[i]);
    }
  }
  return out;
}

CayleyBall racg_ball(const FlagComplex& complex, int radius, const BallCaps& caps) {
  const std::size_t n = complex.vertex_count();
  if (radius < 0 || radius > caps.max_radius) {
    throw Error(ErrorCode::CapExceeded, "radius " + std::to_string(radius) + " outside 0.." +
                                            std::to_string(caps.max_radius));
  }
  if (n > caps.max_vertices) {
    throw Error(ErrorCode::CapExceeded, std::to_string(n) + " generators exceed the cap of " +
                                            std::to_string(caps.max_vertices));
  }
  CayleyBall ball;
  ball.complex_ = &complex;
  ball.radius_ = radius;
  ball.cache_ = std::make_shared<NormalFormCache>(complex);
  ball.words_.push_back({});
  ball.index_.emplace(Word{}, 0);
  for (std::size_t head = 0; head < ball.words_.size(); ++head) {
    if (static_cast<int>(ball.words_[head].size()) >= radius) continue;
    for (std::size_t v = 0; v < n; ++v) {
      Word w = ball.words_[head];
      w.push_back(static_cast<Letter>(v));
      Word nf = ball.cache_->normal_form(w);
      if (ball.index_.count(nf)) continue;
      if (ball.words_.size() >= caps.max_elements) {
        throw Error(ErrorCode::CapExceeded, "ball exceeds " + std::to_string(caps.max_elements) + " elements");
      }
      ball.index_.emplace(nf, ball.words_.size());
      ball.words_.push_back(std::move(nf));
    }
  }
  ball.neighbors_.assign(ball.words_.size(), std::vector<std::size_t>(n, SIZE_MAX));
  for (std::size_t g = 0; g < ball.words_.size(); ++g) {
    for (std::size_t v = 0; v < n; ++v) {
      Word w = ball.words_[g];
      w.push_back(static_cast<Letter>(v));
      if (auto it = ball.index_.find(ball.cache_->normal_form(w)); it != ball.index_.end()) {
        ball.neighbors_[g][v] = it->second;
      } else if (static_cast<int>(ball.words_[g].size()) < radius) {
        throw Error(ErrorCode::CapExceeded, "ball not closed under multiplication at " + ball.word_string(g));
      }
    }
  }
  return ball;
}

VertexSet HeightAssignment::state_at(const CayleyBall& ball, std::size_t g) const {
  VertexSet s = sigma0;
  ball.parity(g).for_each([&](std::size_t v) { s ^= moves.move(v); });
  return s;
}

HeightAssignment assign_heights(const CayleyBall& ball, const VertexSet& sigma0, const MoveSystem& moves) {
  const std::size_t n = ball.complex().vertex_count();
  if (sigma0.width() != n || moves.width() != n) throw Error(ErrorCode::WidthMismatch, "state or move width");
  HeightAssignment h{std::vector<int>(ball.size(), 0), sigma0, moves};
  std::vector<bool> assigned(ball.size(), false);
  std::vector<VertexSet> state(ball.size());
  assigned[0] = true;
  state[0] = sigma0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t g = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < n; ++v) {
      const auto gv = ball.neighbor(g, v);
      if (!gv) continue;
      const int expected = h.height[g] + (state[g].test(v) ? 1 : -1);
      if (!assigned[*gv]) {
        assigned[*gv] = true;
        h.height[*gv] = expected;
        state[*gv] = state[g] ^ moves.move(v);
        queue.push_back(*gv);
      } else if (h.height[*gv] != expected) {
        throw Error(ErrorCode::InconsistentHeight, "edge " + ball.word_string(g) + " -> " + ball.word_string(*gv) +
                                                       ": height " + std::to_string(h.height[*gv]) + " vs " +
                                                       std::to_string(expected));
      }
    }
  }
  return h;
}

LinkAtElement asc_desc_link(const CayleyBall& ball, const HeightAssignment& heights, std::size_t g) {
  if (static_cast<int>(ball.length(g)) > ball.radius() - 1) {
    throw Error(ErrorCode::BoundaryElement, ball.word_string(g) + " is on the boundary of the ball");
  }
  const FlagComplex& complex = ball.complex();
  const std::size_t n = complex.vertex_count();
  LinkAtElement out;
  out.ascending_vertices = VertexSet(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (heights.height[ball.neighbor(g, v).value()] > heights.height[g]) out.ascending_vertices.set(v);
  }
  out.ascending = induced(complex, out.ascending_vertices);
  out.descending = induced(complex, out.ascending_vertices.complement());
  out.predicted_state = heights.state_at(ball, g);
  out.matches_prediction = out.ascending_vertices == out.predicted_state &&
                           out.ascending == induced(complex, out.predicted_state);
  return out;
}

bool commutator_additivity(const CayleyBall& ball, const HeightAssignment& heights) {
  for (std::size_t g = 0; g < ball.size(); ++g) {
    if (!ball.parity(g).empty()) continue;
    for (std::size_t x = 0; x < ball.size(); ++x) {
      const auto gx = ball.multiply(g, x);
      if (gx && heights.height[*gx] != heights.height[g] + heights.height[x]) return false;
    }
  }
  return true;
}

namespace {

// All vertices g * prod(tau) for tau subset of sigma, or nullopt if one leaves the ball.
std::optional<std::vector<std::size_t>> cube_vertices(const CayleyBall& ball, std::size_t base,
                                                      const std::vector<std::size_t>& sigma) {
  std::vector<std::size_t> verts{base};
  for (auto v : sigma) {
    const std::size_t count = verts.size();
    for (std::size_t i = 0; i < count; ++i) {
      const auto next = ball.neighbor(verts[i], v);
      if (!next) return std::nullopt;
      verts.push_back(*next);
    }
  }
  return verts;
}

}  // namespace

std::vector<Cube> ball_cubes(const CayleyBall& ball) {
  const FlagComplex& complex = ball.complex();
  std::vector<Cube> cubes;
  for (std::size_t d = 0; d <= static_cast<std::size_t>(std::max(0, dimension(complex) + 1)); ++d) {
    std::vector<Simplex> sigmas;
    if (d == 0) {
      sigmas.push_back({});
    } else {
      sigmas = simplices(complex, d - 1);
    }
    for (std::size_t g = 0; g < ball.size(); ++g) {
      for (const auto& sigma : sigmas) {
        // base must be minimal in g W_sigma: every letter of sigma lengthens it
        bool minimal = true;
        for (auto v : sigma) {
          const auto gv = ball.neighbor(g, v);
          if (gv && ball.length(*gv) < ball.length(g)) minimal = false;
        }
        if (!minimal || !cube_vertices(ball, g, sigma)) continue;
        cubes.push_back({g, sigma});
      }
    }
  }
  return cubes;
}

std::vector<IntegerMatrix> cubical_boundaries(const CayleyBall& ball, const std::vector<Cube>& cubes,
                                              std::vector<std::size_t>& cells_per_dim) {
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> position;
  std::vector<std::vector<const Cube*>> by_dim;
  for (const auto& c : cubes) {
    const std::size_t d = c.sigma.size();
    if (by_dim.size() <= d) by_dim.resize(d + 1);
    position[{c.base, c.sigma}] = by_dim[d].size();
    by_dim[d].push_back(&c);
  }
  cells_per_dim.clear();
  for (const auto& level : by_dim) cells_per_dim.push_back(level.size());
  std::vector<IntegerMatrix> out;
  if (by_dim.empty()) return out;
  IntegerMatrix aug(1, by_dim[0].size());
  for (std::size_t i = 0; i < by_dim[0].size(); ++i) aug(0, i) = 1;
  out.push_back(std::move(aug));
  for (std::size_t d = 1; d < by_dim.size(); ++d) {
    IntegerMatrix m(by_dim[d - 1].size(), by_dim[d].size());
    for (std::size_t c = 0; c < by_dim[d].size(); ++c) {
      const Cube& cube = *by_dim[d][c];
      for (std::size_t i = 0; i < cube.sigma.size(); ++i) {
        std::vector<std::size_t> face = cube.sigma;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        const std::int64_t sign = i % 2 == 0 ? 1 : -1;
        const std::size_t upper_base = ball.neighbor(cube.base, cube.sigma[i]).value();
        m(position.at({upper_base, face}), c) += sign;
        m(position.at({cube.base, face}), c) -= sign;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

HomologyProfile superlevel_homology(const CayleyBall& ball, const HeightAssignment& heights, int t) {
  std::vector<Cube> kept;
  for (const auto& c : ball_cubes(ball)) {
    const auto verts = cube_vertices(ball, c.base, c.sigma).value();
    if (std::all_of(verts.begin(), verts.end(), [&](std::size_t g) { return heights.height[g] >= t; })) {
      kept.push_back(c);
    }
  }
  std::vector<std::size_t> cells;
  auto boundaries = cubical_boundaries(ball, kept, cells);
  return homology_from_boundaries(cells, boundaries);
}

void dump_ball(std::ostream& out, const CayleyBall& ball, const HeightAssignment* heights) {
  const std::size_t n = ball.complex().vertex_count();
  for (std::size_t g = 0; g < ball.size(); ++g) {
    out << g << ' ' << ball.word_string(g) << ' ';
    if (heights) {
      out << heights->height[g];
    } else {
      out << '-';
    }
    out << ' ';
    bool first = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (auto gv = ball.neighbor(g, v)) {
        if (!first) out << ',';
        out << *gv;
        first = false;
      }
    }
    if (first) out << '-';
    out << '\n';
  }
}

}  // namespace fiberscope
