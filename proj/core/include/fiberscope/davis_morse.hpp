#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fiberscope/flag_complex.hpp"
#include "fiberscope/homology.hpp"
#include "fiberscope/move_system.hpp"

namespace fiberscope {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

struct BallCaps {
  int max_radius = 8;
  std::size_t max_vertices = 16;
  std::size_t max_elements = 250'000;
};

/// Normal forms of right-angled Coxeter group elements by exhaustive rewriting:
/// explore all words reachable by swapping adjacent commuting letters, cancel
/// the first adjacent equal pair found and start over; once no cancellation is
/// reachable the word is reduced and the normal form is the lexicographically
/// least word of its commutation class. Results are memoized per input word.
class NormalFormCache {
 public:
  explicit NormalFormCache(const FlagComplex& complex) : complex_(&complex) {}
  Word normal_form(const Word& word);

 private:
  const FlagComplex* complex_;
  std::map<Word, Word> memo_;
};

/// Elements of W_L of word length <= radius, as normal forms in BFS order.
class CayleyBall {
 public:
  const FlagComplex& complex() const noexcept { return *complex_; }
  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return words_.size(); }
  const Word& word(std::size_t g) const { return words_.at(g); }
  std::size_t length(std::size_t g) const { return words_.at(g).size(); }
  /// Letters occurring an odd number of times.
  VertexSet parity(std::size_t g) const;
  std::optional<std::size_t> find(const Word& normal_form) const;
  /// Index of g * v when inside the ball.
  std::optional<std::size_t> neighbor(std::size_t g, std::size_t v) const;
  /// Index of g * x when inside the ball.
  std::optional<std::size_t> multiply(std::size_t g, std::size_t x) const;
  /// "e" for the identity; letters a, b, ... when |V| <= 26, else "x3.x0...".
  std::string word_string(std::size_t g) const;

 private:
  friend CayleyBall racg_ball(const FlagComplex& complex, int radius, const BallCaps& caps);

  const FlagComplex* complex_ = nullptr;
  int radius_ = 0;
  std::vector<Word> words_;
  std::map<Word, std::size_t> index_;
  std::vector<std::vector<std::size_t>> neighbors_;  // SIZE_MAX outside the ball
  mutable std::shared_ptr<NormalFormCache> cache_;
};

/// Throws CapExceeded. The complex must outlive the ball.
CayleyBall racg_ball(const FlagComplex& complex, int radius, const BallCaps& caps = {});

struct HeightAssignment {
  std::vector<int> height;
  VertexSet sigma0;
  MoveSystem moves;

  /// sigma0 + sum of mu_v over the odd letters of g.
  VertexSet state_at(const CayleyBall& ball, std::size_t g) const;
};

/// Heights by BFS with h(1) = 0 and h(gv) = h(g) +/- 1 according to whether v
/// lies in the current state; every ball edge is rechecked. Throws InconsistentHeight.
HeightAssignment assign_heights(const CayleyBall& ball, const VertexSet& sigma0, const MoveSystem& moves);

struct LinkAtElement {
  VertexSet ascending_vertices;
  FlagComplex ascending;
  FlagComplex descending;
  VertexSet predicted_state;
  bool matches_prediction = false;
};

/// Throws BoundaryElement unless length(g) <= radius - 1.
LinkAtElement asc_desc_link(const CayleyBall& ball, const HeightAssignment& heights, std::size_t g);

/// h(gx) = h(g) + h(x) for every g with even letter counts and every x with gx in the ball.
bool commutator_additivity(const CayleyBall& ball, const HeightAssignment& heights);

/// Cube g W_sigma with minimal-length base g; sigma ascending.
struct Cube {
  std::size_t base = 0;
  std::vector<std::size_t> sigma;
};

/// Cubes whose 2^|sigma| vertices all lie in the ball, by dimension then base then sigma.
std::vector<Cube> ball_cubes(const CayleyBall& ball);

/// Cubical boundary matrices for a cube list (augmentation first).
std::vector<IntegerMatrix> cubical_boundaries(const CayleyBall& ball, const std::vector<Cube>& cubes,
                                              std::vector<std::size_t>& cells_per_dim);

/// Homology of the cubes with every vertex at height >= t. Ball-truncated: illustrative only.
HomologyProfile superlevel_homology(const CayleyBall& ball, const HeightAssignment& heights, int t);

/// One line per element: "index word height neighbors" (height "-" when absent, neighbours comma-separated).
void dump_ball(std::ostream& out, const CayleyBall& ball, const HeightAssignment* heights = nullptr);

}  // namespace fiberscope
