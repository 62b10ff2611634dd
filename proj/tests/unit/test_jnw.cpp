#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "fiberscope/building.hpp"
#include "fiberscope/certificate.hpp"
#include "fiberscope/error.hpp"
#include "fiberscope/estimate.hpp"
#include "fiberscope/homology.hpp"
#include "fiberscope/jnw_search.hpp"
#include "fiberscope/legality.hpp"
#include "fiberscope/move_system.hpp"
#include "fiberscope/rng.hpp"
#include "test_support.hpp"

using namespace fiberscope;
using namespace testing_support;

namespace {

MoveSystem colored(const FlagComplex& c) { return move_system_from_coloring(c, chromatic_number(c).color_of); }

// m = 0: both sides nonempty; m = 1: both sides connected. Pure graph search, no library predicates.
bool brute_legal(const FlagComplex& c, std::uint64_t s, int m) {
  const std::uint64_t full = (c.vertex_count() == 64) ? ~0ULL : ((1ULL << c.vertex_count()) - 1);
  const std::uint64_t t = full & ~s;
  if (s == 0 || t == 0) return false;
  if (m == 0) return true;
  return brute_components(c, s) == 1 && brute_components(c, t) == 1;
}

// Whether some coset of span(moves) consists of legal states, grouping all 2^n states by hand.
bool brute_legal_coset_exists(const FlagComplex& c, const std::vector<std::uint64_t>& moves, int m) {
  const std::size_t n = c.vertex_count();
  std::set<std::uint64_t> span{0};
  for (auto mv : moves) {
    std::set<std::uint64_t> next = span;
    for (auto s : span) next.insert(s ^ mv);
    span = std::move(next);
  }
  std::map<std::uint64_t, bool> coset_ok;  // keyed by minimal member
  for (std::uint64_t s = 0; s < (1ULL << n); ++s) {
    std::uint64_t key = s;
    for (auto x : span) key = std::min(key, s ^ x);
    auto [it, inserted] = coset_ok.emplace(key, true);
    if (!brute_legal(c, s, m)) it->second = false;
  }
  for (const auto& [k, ok] : coset_ok) {
    if (ok) return true;
  }
  return false;
}

std::vector<std::uint64_t> words(const MoveSystem& m) {
  std::vector<std::uint64_t> out;
  for (const auto& mv : m.moves()) out.push_back(mv.low_word());
  return out;
}

}  // namespace

TEST(SplitMix64, ReferenceOutputs) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  auto a = SplitMix64::stream(5, 3);
  auto b = SplitMix64::stream(5, 3);
  auto c = SplitMix64::stream(5, 4);
  const auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
}

TEST(MoveSystem, FromColorings) {
  const auto hex = cycle(6);
  const auto m = colored(hex);
  EXPECT_EQ(m.rank(), 2U);
  for (const auto& mv : m.moves()) EXPECT_EQ(mv.count(), 3U);
  const auto b22 = build_typeA(2, 2, {.distances = false});
  EXPECT_EQ(colored(b22.complex()).rank(), 2U);
  const auto b32 = build_typeA(3, 2, {.distances = false});
  const auto m32 = colored(b32.complex());
  EXPECT_EQ(m32.rank(), 3U);
  const std::vector<std::size_t> improper{0, 0, 1, 1, 0, 1};
  try {
    move_system_from_coloring(hex, improper);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ImproperColoring);
  }
}

TEST(MoveSystem, AxiomChecks) {
  const auto hex = cycle(6);
  std::vector<VertexSet> bad;
  for (std::size_t v = 0; v < 6; ++v) bad.push_back(VertexSet(6, {v, (v + 1) % 6}));
  EXPECT_FALSE(move_axiom_violation(hex, bad).empty());
  EXPECT_THROW(MoveSystem::from_moves(hex, bad), Error);
  std::vector<VertexSet> missing;
  for (std::size_t v = 0; v < 6; ++v) missing.push_back(VertexSet(6, {(v + 3) % 6}));
  EXPECT_FALSE(move_axiom_violation(hex, missing).empty());
  std::vector<VertexSet> singletons;
  for (std::size_t v = 0; v < 6; ++v) singletons.push_back(VertexSet(6, {v}));
  const auto full = MoveSystem::from_moves(hex, singletons);
  EXPECT_EQ(full.rank(), 6U);
  EXPECT_TRUE(full.in_span(VertexSet(6, {1, 4})));
}

TEST(MoveSystem, BasisIsReducedAndSpansMoves) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(12, 0.3, rng);
    const auto m = colored(g);
    for (std::size_t i = 0; i < m.rank(); ++i) {
      EXPECT_EQ(m.basis()[i].first(), m.pivots()[i]);
      for (std::size_t j = 0; j < m.rank(); ++j) {
        if (i != j) EXPECT_FALSE(m.basis()[j].test(m.pivots()[i]));
      }
    }
    EXPECT_TRUE(std::is_sorted(m.pivots().begin(), m.pivots().end()));
    for (const auto& mv : m.moves()) EXPECT_TRUE(m.in_span(mv));
    // Coset representatives are invariant under adding moves.
    const auto x = VertexSet::from_word(12, rng());
    for (const auto& mv : m.moves()) EXPECT_EQ(m.reduce(x ^ mv), m.reduce(x));
  }
}

TEST(MoveSystem, CosetMembers) {
  const auto hex = cycle(6);
  const auto m = colored(hex);
  const VertexSet rep(6, {1});
  const auto members = coset_members(m, rep);
  ASSERT_EQ(members.size(), 4U);
  EXPECT_EQ(std::set<VertexSet>(members.begin(), members.end()).size(), 4U);
  EXPECT_EQ(members[0], rep);
  EXPECT_EQ(members[3], rep ^ m.basis()[0] ^ m.basis()[1]);
  const auto span = coset_members(m, m.moves()[0]);
  EXPECT_NE(std::find(span.begin(), span.end(), VertexSet(6)), span.end());
}

TEST(Legality, Examples) {
  const auto hex = cycle(6);
  const VertexSet empty(6);
  for (int m = 0; m <= 2; ++m) EXPECT_FALSE(is_legal_state(hex, empty, m, LegalityMode::Homological));
  const VertexSet consecutive(6, {0, 1, 2});
  const VertexSet alternating(6, {0, 2, 4});
  EXPECT_TRUE(is_legal_state(hex, consecutive, 1, LegalityMode::Homological));
  EXPECT_TRUE(is_legal_state(hex, consecutive, 1, LegalityMode::Connectivity));
  EXPECT_FALSE(is_legal_state(hex, alternating, 1, LegalityMode::Homological));
  EXPECT_TRUE(is_legal_state(hex, alternating, 0, LegalityMode::Homological));
  EXPECT_FALSE(is_sharply_legal_state(hex, consecutive, -1));
  EXPECT_THROW(is_legal_state(hex, consecutive, 2, LegalityMode::Connectivity), Error);
  EXPECT_EQ(parse_mode("conn"), LegalityMode::Connectivity);
  EXPECT_EQ(to_string(LegalityMode::Homological), "hom");
  EXPECT_THROW(parse_mode("other"), Error);
}

TEST(Legality, SharplyLegalCircles) {
  const auto two = doubled(cycle(6));
  VertexSet first(12);
  for (std::size_t v = 0; v < 6; ++v) first.set(v);
  EXPECT_TRUE(is_sharply_legal_state(two, first, 0));
  EXPECT_FALSE(is_sharply_legal_state(two, first, 1));
  const SideOracle oracle(two);
  EXPECT_TRUE(oracle.sharply_legal(first, 0));
}

TEST(Legality, SymmetricUnderComplement) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_graph(10, 0.45, rng);
    const auto s = VertexSet::from_word(10, rng());
    for (int m = 0; m <= 2; ++m) {
      EXPECT_EQ(is_legal_state(g, s, m, LegalityMode::Homological),
                is_legal_state(g, s.complement(), m, LegalityMode::Homological));
    }
  }
}

TEST(Legality, OracleFastPathsAgreeWithHomology) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_graph(11, trial % 2 ? 0.2 : 0.55, rng);
    const SideOracle oracle(g);
    for (int rep = 0; rep < 50; ++rep) {
      const auto s = VertexSet::from_word(11, rng());
      const auto sub = induced(g, s);
      EXPECT_EQ(oracle.connected(s), is_connected(sub));
      EXPECT_EQ(oracle.components_word(s.low_word()), brute_components(g, s.low_word()));
      EXPECT_EQ(oracle.edges_word(s.low_word()), sub.edge_count());
      for (int k = -1; k <= 2; ++k) EXPECT_EQ(oracle.acyclic(s, k), is_k_acyclic(sub, k));
      for (int d = 0; d <= 2; ++d) EXPECT_EQ(oracle.top_trivial(s, d), reduced_homology(sub).trivial_at(d));
      for (int m = 0; m <= 2; ++m) {
        EXPECT_EQ(oracle.legal(s, m, LegalityMode::Homological), is_legal_state(g, s, m, LegalityMode::Homological));
      }
      EXPECT_EQ(oracle.legal(s, 1, LegalityMode::Connectivity), brute_legal(g, s.low_word(), 1));
    }
  }
}

TEST(CosetSearch, NegativeControls) {
  for (const auto& c : {cycle(6), build_typeA(2, 2, {.distances = false}).complex()}) {
    const auto m = colored(c);
    const auto r = coset_search(c, m, 1, LegalityMode::Homological);
    EXPECT_FALSE(r.certificate.has_value());
    EXPECT_EQ(r.space, std::uint64_t{1} << (c.vertex_count() - m.rank()));
    EXPECT_FALSE(brute_legal_coset_exists(c, words(m), 1));
  }
}

TEST(CosetSearch, PathOfLengthTwo) {
  const auto p = path(3);
  const std::vector<std::size_t> coloring{1, 0, 1};
  const auto m = move_system_from_coloring(p, coloring);
  const auto r = coset_search(p, m, 0, LegalityMode::Homological);
  ASSERT_TRUE(r.certificate.has_value());
  for (const auto& e : r.certificate->evidence) EXPECT_TRUE(is_legal_state(p, e.state, 0, LegalityMode::Homological));
  EXPECT_TRUE(brute_legal_coset_exists(p, words(m), 0));

  SearchOptions sampled;
  sampled.strategy = Strategy::Sampled;
  sampled.samples = 64;
  sampled.seed = 3;
  EXPECT_TRUE(coset_search(p, m, 0, LegalityMode::Homological, sampled).certificate.has_value());
}

TEST(CosetSearch, AgreesWithBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_graph(4 + rng() % 6, 0.5, rng);
    const auto m = colored(g);
    for (int deg = 0; deg <= 1; ++deg) {
      const auto r = coset_search(g, m, deg, LegalityMode::Connectivity);
      ASSERT_EQ(r.certificate.has_value(), brute_legal_coset_exists(g, words(m), deg));
      const auto h = coset_search(g, m, deg, LegalityMode::Homological);
      EXPECT_EQ(h.certificate.has_value(), r.certificate.has_value());
      if (r.certificate) {
        EXPECT_EQ(r.certificate->rep, coset_representative(m, r.position));
        for (const auto& s : coset_members(m, r.certificate->rep)) EXPECT_TRUE(brute_legal(g, s.low_word(), deg));
      }
    }
  }
}

TEST(CosetSearch, WorkerCountDoesNotChangeResult) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_graph(14, 0.4, rng);
    const auto m = colored(g);
    SearchOptions one, three;
    three.workers = 3;
    const auto a = coset_search(g, m, 1, LegalityMode::Homological, one);
    const auto b = coset_search(g, m, 1, LegalityMode::Homological, three);
    EXPECT_EQ(a.certificate.has_value(), b.certificate.has_value());
    EXPECT_EQ(a.position, b.position);
  }
  const auto big = build_typeA(3, 2, {.distances = false}).complex();
  EXPECT_THROW(coset_search(big, colored(big), 1, LegalityMode::Homological), Error);
}

TEST(Estimate, HoeffdingAndFormatting) {
  EXPECT_NEAR(hoeffding_half_width(100000), 0.005147, 1e-6);
  EXPECT_EQ(csv_header(), "predicate,samples,seed,p_hat,ci_low,ci_high");
  const auto e = census(discrete(2), parse_predicate("not-connected"));
  EXPECT_EQ(e.hits, 2U);
  EXPECT_DOUBLE_EQ(e.p_hat, 0.5);
  EXPECT_EQ(csv_row(e), "not-connected,4,exhaustive,0.500000,0.500000,0.500000");
  EXPECT_EQ(census(path(2), parse_predicate("not-connected")).hits, 1U);
  EXPECT_EQ(to_string(parse_predicate("not-acyclic:1")), "not-acyclic:1");
  EXPECT_THROW(parse_predicate("bogus"), Error);
  EXPECT_THROW(census(build_typeA(3, 2, {.distances = false}).complex(), parse_predicate("not-connected")), Error);
}

TEST(Estimate, CensusMatchesBruteForce) {
  const auto heawood = build_typeA(2, 2, {.distances = false}).complex();
  std::uint64_t brute = 0;
  for (std::uint64_t s = 0; s < (1U << 14); ++s) brute += brute_not_connected(heawood, s) ? 1 : 0;
  const auto exact = census(heawood, parse_predicate("not-connected"), 2);
  EXPECT_EQ(exact.hits, brute);
  EXPECT_TRUE(exact.exhaustive);
}

TEST(Estimate, SampledIntervalsCoverCensus) {
  const auto heawood = build_typeA(2, 2, {.distances = false}).complex();
  const auto pred = parse_predicate("not-connected");
  const double truth = census(heawood, pred).p_hat;
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto e = estimate_fraction(heawood, pred, 10000, seed);
    if (e.ci_low <= truth && truth <= e.ci_high) ++covered;
  }
  EXPECT_GE(covered, 98);
  const auto big = estimate_fraction(heawood, pred, 100000, 0);
  EXPECT_LE(big.ci_low, truth);
  EXPECT_GE(big.ci_high, truth);
}

TEST(Estimate, DeterministicAcrossWorkers) {
  const auto b = build_typeA(2, 3, {.distances = false}).complex();
  const auto pred = parse_predicate("trivial-top:1");
  const auto a = estimate_fraction(b, pred, 20000, 9, 1);
  const auto c = estimate_fraction(b, pred, 20000, 9, 3);
  EXPECT_EQ(a.hits, c.hits);
  EXPECT_EQ(csv_row(a), csv_row(c));
  EXPECT_NE(estimate_fraction(b, pred, 20000, 10, 1).hits, a.hits);
}

TEST(Pigeonhole, SingleEdgeAndHeawood) {
  const auto edge = path(2);
  const auto r = pigeonhole_check(edge, 1, LegalityMode::Homological, false);
  EXPECT_EQ(r.bad.hits, 1U);

  const auto heawood = build_typeA(2, 2, {.distances = false}).complex();
  const auto h = pigeonhole_check(heawood, 1, LegalityMode::Homological, false);
  EXPECT_EQ(h.threshold, 2048U);
  EXPECT_EQ(h.chromatic, 2U);
  std::uint64_t brute = 0;
  for (std::uint64_t s = 0; s < (1U << 14); ++s) brute += brute_not_connected(heawood, s) ? 1 : 0;
  EXPECT_EQ(h.bad.hits, brute);
  EXPECT_EQ(h.verdict, brute < 2048 ? PigeonholeVerdict::Certified : PigeonholeVerdict::NotImplied);
  EXPECT_EQ(to_string(PigeonholeVerdict::NotImplied), "NOT-IMPLIED");
}

TEST(Pigeonhole, SampledIsEstimated) {
  const auto b = build_typeA(2, 3, {.distances = false}).complex();
  SearchOptions opt;
  opt.strategy = Strategy::Sampled;
  opt.samples = 20000;
  const auto r = pigeonhole_check(b, 1, LegalityMode::Homological, false, opt);
  EXPECT_EQ(r.verdict, PigeonholeVerdict::Estimated);
  EXPECT_EQ(r.threshold_log2, 23);
  EXPECT_FALSE(r.exhaustive);
}

class CertificateTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const std::vector<std::size_t> coloring{1, 0, 1};
    moves = move_system_from_coloring(complex, coloring);
    auto r = coset_search(complex, moves, 0, LegalityMode::Homological);
    ASSERT_TRUE(r.certificate.has_value());
    text = to_json(*r.certificate);
  }
  FlagComplex complex = path(3);
  MoveSystem moves;
  std::string text;
};

TEST_F(CertificateTest, RoundTripAndReplay) {
  EXPECT_EQ(to_json(certificate_from_json(text)), text);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j.at("schema"), kCertificateSchema);
  EXPECT_EQ(j.at("evidence").size(), 4U);
  EXPECT_EQ(text.back(), '\n');
  const auto report = verify_certificate(text);
  EXPECT_TRUE(report.ok);
  EXPECT_TRUE(report.failures.empty());
}

TEST_F(CertificateTest, TamperedStateFails) {
  auto j = nlohmann::json::parse(text);
  j["evidence"][0]["state_hex"] = "7";
  EXPECT_FALSE(verify_certificate(j.dump(2)).ok);
}

TEST_F(CertificateTest, TamperedProfileFails) {
  auto j = nlohmann::json::parse(text);
  j["evidence"][1]["side_a_profile"]["degrees"][0]["free_rank"] = 3;
  EXPECT_FALSE(verify_certificate(j.dump(2)).ok);
}

TEST_F(CertificateTest, TamperedComplexFails) {
  auto j = nlohmann::json::parse(text);
  j["complex"]["edges"].push_back(nlohmann::json::array({0, 2}));
  EXPECT_FALSE(verify_certificate(j.dump(2)).ok);
}

TEST_F(CertificateTest, IllegalCosetFails) {
  const auto bad = make_certificate(cycle(6), colored(cycle(6)), VertexSet(6, {0}), 1, LegalityMode::Homological,
                                    false);
  EXPECT_FALSE(verify_certificate(to_json(bad)).ok);
}

TEST_F(CertificateTest, GarbageIsRejected) {
  EXPECT_THROW(certificate_from_json("{not json"), Error);
  EXPECT_FALSE(verify_certificate("{}").ok);
}
