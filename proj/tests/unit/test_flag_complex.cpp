#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "fiberscope/complex_io.hpp"
#include "fiberscope/error.hpp"
#include "fiberscope/flag_complex.hpp"
#include "fiberscope/homology.hpp"
#include "test_support.hpp"

using namespace fiberscope;
using namespace testing_support;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

// Count cliques of every size by brute force over subsets (n <= 16).
std::vector<std::size_t> brute_f_vector(const FlagComplex& c) {
  std::vector<std::size_t> f;
  const std::size_t n = c.vertex_count();
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    bool clique = true;
    for (std::size_t i = 0; i < n && clique; ++i) {
      if (!((mask >> i) & 1U)) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (((mask >> j) & 1U) && !c.adjacent(i, j)) {
          clique = false;
          break;
        }
      }
    }
    if (!clique) continue;
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (f.size() < size) f.resize(size, 0);
    ++f[size - 1];
  }
  return f;
}

}  // namespace

TEST(VertexSet, BasicOperations) {
  VertexSet a(70, {0, 3, 65});
  VertexSet b(70, {3, 4});
  EXPECT_EQ(a.count(), 3U);
  EXPECT_EQ((a ^ b).members(), (std::vector<std::size_t>{0, 4, 65}));
  EXPECT_EQ((a & b).members(), (std::vector<std::size_t>{3}));
  EXPECT_EQ((a - b).members(), (std::vector<std::size_t>{0, 65}));
  EXPECT_EQ(a.first(), 0U);
  EXPECT_EQ(a.next(3), 65U);
  EXPECT_EQ(a.next(65), 70U);
  EXPECT_EQ(a.complement().count(), 67U);
  EXPECT_TRUE(VertexSet(70, {3}).is_subset_of(a));
  EXPECT_EQ(VertexSet::from_hex(70, a.to_hex()), a);
  EXPECT_EQ(code_of([&] { (void)(a ^ VertexSet(10)); }), ErrorCode::WidthMismatch);
  EXPECT_EQ(code_of([&] { (void)a.test(70); }), ErrorCode::IndexOutOfRange);
}

TEST(VertexSet, HexIsBigEndianWithVertexZeroLowest) {
  EXPECT_EQ(VertexSet(6, {0}).to_hex(), "01");
  EXPECT_EQ(VertexSet(6, {5}).to_hex(), "20");
  EXPECT_EQ(VertexSet(3, {0, 2}).to_hex(), "5");
}

TEST(VertexSet, GroupLawsOnRandomSets) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t w = 1 + rng() % 150;
    auto draw = [&] {
      VertexSet s(w);
      for (std::size_t i = 0; i < w; ++i) {
        if (rng() & 1U) s.set(i);
      }
      return s;
    };
    const auto x = draw(), y = draw(), z = draw();
    EXPECT_EQ((x ^ y) ^ z, x ^ (y ^ z));
    EXPECT_EQ(x ^ y, y ^ x);
    EXPECT_TRUE((x ^ x).empty());
    EXPECT_EQ(x ^ VertexSet(w), x);
    EXPECT_EQ(x.complement().complement(), x);
    EXPECT_EQ(VertexSet::from_hex(w, x.to_hex()), x);
    EXPECT_FALSE(x < y && y < x);
    EXPECT_TRUE(x < y || y < x || x == y);
  }
}

TEST(FlagComplex, ConstructionErrors) {
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> out{{0, 5}};
  EXPECT_EQ(code_of([&] { FlagComplex::from_graph(3, dup); }), ErrorCode::DuplicateEdge);
  EXPECT_EQ(code_of([&] { FlagComplex::from_graph(3, loop); }), ErrorCode::SelfLoop);
  EXPECT_EQ(code_of([&] { FlagComplex::from_graph(3, out); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([&] { FlagComplex::from_graph(10, {}, {}, 5); }), ErrorCode::TooLarge);
}

TEST(FlagComplex, TriangleIsTwoSimplex) {
  const auto t = complete(3);
  EXPECT_EQ(f_vector(t), (std::vector<std::size_t>{3, 3, 1}));
  EXPECT_EQ(dimension(t), 2);
  EXPECT_EQ(maximal_simplices(t), (std::vector<Simplex>{{0, 1, 2}}));
  EXPECT_TRUE(t.is_simplex(std::vector<std::size_t>{0, 2}));
}

TEST(FlagComplex, EmptyComplex) {
  const FlagComplex e;
  EXPECT_EQ(dimension(e), -1);
  EXPECT_TRUE(f_vector(e).empty());
  EXPECT_FALSE(is_connected(e));
  EXPECT_EQ(charney_davis(e, 2), Rational(1));
}

TEST(FlagComplex, HexagonInvariants) {
  const auto h = cycle(6);
  EXPECT_EQ(f_vector(h), (std::vector<std::size_t>{6, 6}));
  const auto g = girth_and_square_free(h);
  ASSERT_TRUE(g.girth.has_value());
  EXPECT_EQ(*g.girth, 6U);
  EXPECT_TRUE(g.square_free);
  EXPECT_EQ(chromatic_number(h).colors, 2U);
  EXPECT_EQ(charney_davis(h, 2), Rational(1) - Rational(6, 2) + Rational(6, 4));
  EXPECT_TRUE(is_chamber_complex(h, 1));
}

TEST(FlagComplex, SquareIsNotSquareFree) {
  const auto g = girth_and_square_free(cycle(4));
  EXPECT_EQ(*g.girth, 4U);
  EXPECT_FALSE(g.square_free);
  // A 4-cycle with a chord is not an induced square.
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}};
  EXPECT_TRUE(girth_and_square_free(FlagComplex::from_graph(4, e)).square_free);
  EXPECT_FALSE(girth_and_square_free(path(5)).girth.has_value());
}

TEST(FlagComplex, FVectorMatchesCliqueBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto c = random_graph(4 + rng() % 10, 0.2 + 0.6 * (trial % 5) / 4.0, rng);
    EXPECT_EQ(f_vector(c), brute_f_vector(c));
    long long chi = 0;
    const auto f = brute_f_vector(c);
    for (std::size_t k = 0; k < f.size(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long long>(f[k]);
    EXPECT_EQ(euler_characteristic(f_vector(c)), chi);
  }
}

TEST(FlagComplex, MaximalSimplicesCoverEveryClique) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = random_graph(10, 0.5, rng);
    const auto maximal = maximal_simplices(c);
    for (const auto& s : maximal) {
      EXPECT_TRUE(c.is_simplex(s));
      for (std::size_t v = 0; v < c.vertex_count(); ++v) {
        if (std::find(s.begin(), s.end(), v) != s.end()) continue;
        auto bigger = s;
        bigger.push_back(v);
        std::sort(bigger.begin(), bigger.end());
        EXPECT_FALSE(c.is_simplex(bigger));
      }
    }
    EXPECT_TRUE(std::is_sorted(maximal.begin(), maximal.end()));
  }
}

TEST(FlagComplex, InducedComposes) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_graph(12, 0.4, rng);
    VertexSet s = VertexSet::from_word(12, rng());
    const auto sub = induced(c, s);
    ASSERT_EQ(sub.vertex_count(), s.count());
    const auto members = s.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (i != j) EXPECT_EQ(sub.adjacent(i, j), c.adjacent(members[i], members[j]));
      }
    }
    EXPECT_EQ(induced(c, c.all_vertices()), c);
  }
}

TEST(FlagComplex, CharneyDavisClosedForm) {
  // For n-cycles, kappa = 1 - n/2 + n/4 = 1 - n/4.
  for (std::size_t n = 4; n <= 12; ++n) {
    EXPECT_EQ(charney_davis(cycle(n), 2), Rational(1) - Rational(static_cast<long long>(n), 4));
  }
  // Octahedron in dimension 3: 1 - 6/2 + 12/4 - 8/8 = 0.
  EXPECT_EQ(charney_davis(octahedron(), 3), Rational(0));
}

TEST(FlagComplex, ChromaticNumberWitness) {
  EXPECT_EQ(chromatic_number(complete(5)).colors, 5U);
  EXPECT_EQ(chromatic_number(cycle(5)).colors, 3U);
  EXPECT_EQ(chromatic_number(discrete(4)).colors, 1U);
  const auto oct = octahedron();
  const auto col = chromatic_number(oct);
  EXPECT_EQ(col.colors, 3U);
  EXPECT_TRUE(is_proper_coloring(oct, col.color_of));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(9, 0.45, rng);
    const auto c = chromatic_number(g);
    EXPECT_TRUE(is_proper_coloring(g, c.color_of));
    // No proper coloring with fewer colors, by exhaustive assignment.
    if (c.colors >= 2) {
      const std::size_t k = c.colors - 1;
      std::vector<std::size_t> assign(9, 0);
      bool found = false;
      while (!found) {
        if (is_proper_coloring(g, assign)) found = true;
        std::size_t i = 0;
        while (i < 9 && ++assign[i] == k) assign[i++] = 0;
        if (i == 9) break;
      }
      EXPECT_FALSE(found);
    }
  }
}

TEST(FlagComplex, LinkAndStar) {
  const auto oct = octahedron();
  const std::vector<std::size_t> v{0};
  const auto ls = link_star(oct, v);
  EXPECT_EQ(ls.link_vertices.count(), 4U);
  EXPECT_EQ(f_vector(ls.link), (std::vector<std::size_t>{4, 4}));
  EXPECT_EQ(ls.star_vertices.count(), 5U);
  const std::vector<std::size_t> bad{0, 1};
  EXPECT_EQ(code_of([&] { link_star(oct, bad); }), ErrorCode::NotASimplex);
}

TEST(FlagComplex, ChamberComplexChecks) {
  EXPECT_TRUE(is_chamber_complex(octahedron(), 2));
  EXPECT_FALSE(is_chamber_complex(octahedron(), 1));
  EXPECT_FALSE(is_chamber_complex(doubled(cycle(6)), 1));
  // Two triangles sharing only a vertex: pure but not gallery-connected.
  std::vector<Edge> bowtie{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}};
  EXPECT_FALSE(is_chamber_complex(FlagComplex::from_graph(5, bowtie), 2));
  // Path with a pendant triangle is not pure.
  std::vector<Edge> mixed{{0, 1}, {1, 2}, {0, 2}, {2, 3}};
  EXPECT_FALSE(is_chamber_complex(FlagComplex::from_graph(4, mixed), 2));
  EXPECT_FALSE(is_chamber_complex(FlagComplex(), 0));
}

TEST(ComplexIo, RoundTripAndHash) {
  const auto h = cycle(6);
  const auto text = to_text(h);
  std::istringstream in(text);
  const auto back = read_complex(in);
  EXPECT_EQ(back, h);
  EXPECT_EQ(complex_hash(back), complex_hash(h));
  EXPECT_NE(complex_hash(path(6)), complex_hash(h));
  EXPECT_EQ(complex_hash(h).size(), 16U);
  std::istringstream bad("n 3\ne 0 7\n");
  EXPECT_EQ(code_of([&] { read_complex(bad); }), ErrorCode::IndexOutOfRange);
  std::istringstream junk("n 3\nfoo\n");
  EXPECT_EQ(code_of([&] { read_complex(junk); }), ErrorCode::ParseError);
}
