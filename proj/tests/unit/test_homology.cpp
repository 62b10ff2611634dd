#include <gtest/gtest.h>

#include <random>

#include "fiberscope/error.hpp"
#include "fiberscope/homology.hpp"
#include "fiberscope/integer_matrix.hpp"
#include "test_support.hpp"

using namespace fiberscope;
using namespace testing_support;

namespace {

std::vector<std::vector<long long>> to_ll(const IntegerMatrix& m) {
  std::vector<std::vector<long long>> out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  }
  return out;
}

// Reduced Betti numbers over Q from boundary ranks computed by the test's own elimination.
std::vector<std::size_t> rational_betti(const FlagComplex& c) {
  const auto f = f_vector(c);
  const int dim = dimension(c);
  std::vector<std::size_t> rank(static_cast<std::size_t>(dim) + 2, 0);
  for (int k = 0; k <= dim; ++k) rank[k] = rational_rank(to_ll(boundary_matrix(c, k)));
  std::vector<std::size_t> betti;
  for (int k = 0; k <= dim; ++k) betti.push_back(f[k] - rank[k] - rank[k + 1]);
  return betti;
}

}  // namespace

TEST(SmithNormalForm, SmallExamples) {
  const auto snf = smith_normal_form(IntegerMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  EXPECT_EQ(snf.rank, 3U);
  EXPECT_EQ(snf.divisors, (std::vector<BigInt>{2, 6, 12}));
  const auto zero = smith_normal_form(IntegerMatrix(3, 2));
  EXPECT_EQ(zero.rank, 0U);
  EXPECT_EQ(smith_normal_form(IntegerMatrix::diagonal({4, 6})).divisors, (std::vector<BigInt>{2, 12}));
}

TEST(SmithNormalForm, FourCycleBoundary) {
  const auto d1 = boundary_matrix(cycle(4), 1);
  ASSERT_EQ(d1.rows(), 4U);
  ASSERT_EQ(d1.cols(), 4U);
  const auto snf = smith_normal_form(d1);
  EXPECT_EQ(snf.divisors, (std::vector<BigInt>{1, 1, 1}));
}

TEST(SmithNormalForm, EscalatesOnOverflow) {
  const std::int64_t a = std::int64_t{1} << 40;
  const auto snf = smith_normal_form(IntegerMatrix::diagonal({a, a + 1}));
  EXPECT_TRUE(snf.escalated);
  EXPECT_EQ(snf.divisors, (std::vector<BigInt>{1, BigInt(a) * BigInt(a + 1)}));
}

TEST(SmithNormalForm, InvariantUnderUnimodularChanges) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntegerMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<std::int64_t>(rng() % 13) - 6;
    }
    // Random unimodular transforms built from elementary operations.
    auto unimodular = [&](std::size_t n) {
      auto u = IntegerMatrix::diagonal(std::vector<std::int64_t>(n, 1));
      for (int step = 0; step < 6 && n > 1; ++step) {
        const std::size_t a = rng() % n;
        std::size_t b = rng() % n;
        if (a == b) b = (b + 1) % n;
        const std::int64_t k = static_cast<std::int64_t>(rng() % 5) - 2;
        for (std::size_t col = 0; col < n; ++col) u(a, col) += k * u(b, col);
      }
      return u;
    };
    const auto transformed = multiply(multiply(unimodular(r), m), unimodular(c));
    const auto s1 = smith_normal_form(m);
    const auto s2 = smith_normal_form(transformed);
    EXPECT_EQ(s1.rank, s2.rank);
    EXPECT_EQ(s1.divisors, s2.divisors);
    for (std::size_t i = 1; i < s1.divisors.size(); ++i) EXPECT_EQ(s1.divisors[i] % s1.divisors[i - 1], 0);
    EXPECT_EQ(s1.rank, rational_rank(to_ll(m)));
  }
}

TEST(Boundary, SquaresToZero) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_graph(10, 0.6, rng);
    const int dim = dimension(c);
    for (int k = 1; k <= dim; ++k) {
      const auto prod = multiply(boundary_matrix(c, k - 1), boundary_matrix(c, k));
      for (auto x : prod.data()) EXPECT_EQ(x, 0);
    }
  }
  EXPECT_THROW(boundary_matrix(cycle(5), 3), Error);
}

TEST(Homology, Spheres) {
  const auto h = reduced_homology(cycle(6));
  EXPECT_EQ(h.summary(), "H0=0 H1=Z");
  const auto o = reduced_homology(octahedron());
  EXPECT_TRUE(o.trivial_at(0));
  EXPECT_TRUE(o.trivial_at(1));
  EXPECT_EQ(o.at(2).free_rank, 1U);
  EXPECT_EQ(reduced_homology(discrete(3)).summary(), "H0=Z^2");
  EXPECT_EQ(reduced_homology(FlagComplex()).summary(), "empty");
}

TEST(Homology, HeawoodGraphIsWedgeOfEightCircles) {
  const auto heawood = projective_plane_incidence(2);
  ASSERT_EQ(heawood.vertex_count(), 14U);
  const auto h = reduced_homology(heawood);
  EXPECT_TRUE(h.trivial_at(0));
  EXPECT_EQ(h.at(1).free_rank, 8U);
}

TEST(Homology, ProjectivePlaneHasTwoTorsion) {
  const auto rp2 = rp2_subdivision();
  ASSERT_EQ(rp2.vertex_count(), 31U);
  const auto h = reduced_homology(rp2);
  EXPECT_TRUE(h.trivial_at(0));
  EXPECT_EQ(h.at(1).free_rank, 0U);
  EXPECT_EQ(h.at(1).torsion, (std::vector<BigInt>{2}));
  EXPECT_TRUE(h.trivial_at(2));
  EXPECT_EQ(h.summary(), "H0=0 H1=Z/2 H2=0");
  EXPECT_FALSE(is_k_acyclic(rp2, 1));
  EXPECT_TRUE(is_k_acyclic(rp2, 0));
}

TEST(Homology, ConesAreAcyclic) {
  for (const auto& base : {cycle(6), octahedron(), projective_plane_incidence(2), rp2_subdivision()}) {
    const auto c = cone(base);
    EXPECT_TRUE(is_k_acyclic(c, dimension(c)));
  }
}

TEST(Homology, EulerPoincareOnRandomComplexes) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = random_graph(5 + rng() % 8, 0.3 + 0.1 * (trial % 5), rng);
    const auto h = reduced_homology(c);
    const auto betti = rational_betti(c);
    long long alt = 0;
    for (std::size_t k = 0; k < betti.size(); ++k) {
      EXPECT_EQ(h.at(k).free_rank, betti[k]);
      alt += (k % 2 ? -1 : 1) * static_cast<long long>(betti[k]);
    }
    EXPECT_EQ(alt, euler_characteristic(f_vector(c)) - 1);
  }
}

TEST(Homology, ConnectivityAgreesWithZeroAcyclicity) {
  const auto heawood = projective_plane_incidence(2);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto s = VertexSet::from_word(14, rng());
    const auto sub = induced(heawood, s);
    const bool conn = is_connected(sub);
    EXPECT_EQ(conn, is_k_acyclic(sub, 0));
    EXPECT_EQ(conn, !brute_not_connected(heawood, s.low_word()));
  }
}

TEST(Homology, TruncatedDegreesAgree) {
  const auto rp2 = rp2_subdivision();
  const auto full = reduced_homology(rp2);
  const auto low = reduced_homology(rp2, 1);
  ASSERT_EQ(low.degrees.size(), 2U);
  EXPECT_EQ(low.at(0), full.at(0));
  EXPECT_EQ(low.at(1), full.at(1));
  EXPECT_TRUE(top_homology_nontrivial(octahedron(), 2));
  EXPECT_FALSE(top_homology_nontrivial(cone(octahedron()), 2));
  EXPECT_TRUE(is_k_acyclic(discrete(1), -1));
  EXPECT_FALSE(is_k_acyclic(FlagComplex(), -1));
}

TEST(Homology, FromExplicitChainComplex) {
  // Cellular circle: one vertex, one edge with zero boundary, augmentation [1].
  std::vector<IntegerMatrix> boundaries{IntegerMatrix::from_rows({{1}}), IntegerMatrix(1, 1)};
  const auto h = homology_from_boundaries({1, 1}, boundaries);
  EXPECT_TRUE(h.trivial_at(0));
  EXPECT_EQ(h.at(1).free_rank, 1U);
}
