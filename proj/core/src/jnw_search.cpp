#include "fiberscope/jnw_search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "fiberscope/error.hpp"
#include "fiberscope/rng.hpp"
#include "parallel.hpp"

namespace fiberscope {

std::string_view to_string(Strategy strategy) noexcept {
  return strategy == Strategy::Exhaustive ? "exhaustive" : "sampled";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "exhaustive") return Strategy::Exhaustive;
  if (text == "sampled") return Strategy::Sampled;
  throw Error(ErrorCode::InvalidArgument, "unknown strategy '" + std::string(text) + "' (exhaustive|sampled)");
}

std::string_view to_string(PigeonholeVerdict verdict) noexcept {
  switch (verdict) {
    case PigeonholeVerdict::Certified: return "CERTIFIED";
    case PigeonholeVerdict::NotImplied: return "NOT-IMPLIED";
    case PigeonholeVerdict::Estimated: return "ESTIMATED";
  }
  return "?";
}

namespace {

std::vector<std::size_t> free_coordinates(const MoveSystem& moves) {
  std::vector<bool> pivot(moves.width(), false);
  for (auto p : moves.pivots()) pivot[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < moves.width(); ++v) {
    if (!pivot[v]) out.push_back(v);
  }
  return out;
}

// Legality of whole cosets, with a word-level path for small complexes and low degrees.
class CosetTester {
 public:
  CosetTester(const FlagComplex& complex, const MoveSystem& moves, int m, LegalityMode mode, bool sharply)
      : oracle_(complex), moves_(moves), m_(m), mode_(mode), sharply_(sharply) {
    if (mode == LegalityMode::Connectivity && m - 1 > 0) {
      throw Error(ErrorCode::UnsupportedDegree, "connectivity mode supports only m - 1 in {-1, 0}");
    }
    if (moves.width() != complex.vertex_count()) throw Error(ErrorCode::WidthMismatch, "move system width");
    if (moves.rank() >= 31) throw Error(ErrorCode::TooLarge, "move span too large");
    const std::size_t n = complex.vertex_count();
    word_path_ = oracle_.word_sized() && !sharply && m - 1 <= 0;
    full_ = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    if (word_path_) {
      for (const auto& b : moves.basis()) basis_words_.push_back(b.low_word());
    }
  }

  bool member_legal_word(std::uint64_t s) const {
    if (m_ - 1 < -1) return true;
    const std::uint64_t other = full_ & ~s;
    if (m_ - 1 == -1) return s != 0 && other != 0;
    return oracle_.connected_word(s) && oracle_.connected_word(other);
  }

  bool member_legal(const VertexSet& s) const {
    return sharply_ ? oracle_.sharply_legal(s, m_ - 1) : oracle_.legal(s, m_, mode_);
  }

  bool coset_legal(const VertexSet& rep) const {
    const std::size_t r = moves_.rank();
    if (word_path_) {
      const std::uint64_t base = rep.low_word();
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << r); ++i) {
        std::uint64_t s = base;
        for (std::size_t j = 0; j < r; ++j) {
          if ((i >> j) & 1U) s ^= basis_words_[j];
        }
        if (!member_legal_word(s)) return false;
      }
      return true;
    }
    for (const auto& s : coset_members(moves_, rep)) {
      if (!member_legal(s)) return false;
    }
    return true;
  }

 private:
  SideOracle oracle_;
  const MoveSystem& moves_;
  int m_;
  LegalityMode mode_;
  bool sharply_;
  bool word_path_ = false;
  std::uint64_t full_ = 0;
  std::vector<std::uint64_t> basis_words_;
};

}  // namespace

VertexSet coset_representative(const MoveSystem& moves, std::uint64_t index) {
  const auto free = free_coordinates(moves);
  const std::uint64_t gray = index ^ (index >> 1);
  VertexSet rep(moves.width());
  for (std::size_t j = 0; j < free.size() && j < 64; ++j) {
    if ((gray >> j) & 1U) rep.set(free[j]);
  }
  return rep;
}

SearchResult coset_search(const FlagComplex& complex, const MoveSystem& moves, int m, LegalityMode mode,
                          const SearchOptions& options) {
  const CosetTester tester(complex, moves, m, mode, options.sharply);
  const std::size_t n = complex.vertex_count();
  constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> found{kNone};
  auto record = [&](std::uint64_t index) {
    std::uint64_t current = found.load();
    while (index < current && !found.compare_exchange_weak(current, index)) {
    }
  };

  SearchResult result;
  if (options.strategy == Strategy::Exhaustive) {
    if (n > options.vertex_cap) {
      throw Error(ErrorCode::BudgetExceeded, "exhaustive search over " + std::to_string(n) +
                                                 " vertices exceeds the cap of " + std::to_string(options.vertex_cap));
    }
    const auto free = free_coordinates(moves);
    const std::uint64_t space = std::uint64_t{1} << free.size();
    result.space = space;
    constexpr std::uint64_t kChunk = std::uint64_t{1} << 14;
    const std::uint64_t blocks = (space + kChunk - 1) / kChunk;
    detail::for_each_block(blocks, options.workers, [&](std::uint64_t b) {
      const std::uint64_t begin = b * kChunk;
      if (begin > found.load()) return false;
      const std::uint64_t end = std::min(space, begin + kChunk);
      VertexSet rep = coset_representative(moves, begin);
      for (std::uint64_t i = begin; i < end; ++i) {
        if (i > begin) rep.flip(free[static_cast<std::size_t>(std::countr_zero(i))]);
        if (tester.coset_legal(rep)) {
          record(i);
          return false;
        }
      }
      return true;
    });
    if (found.load() != kNone) {
      result.position = found.load();
      result.certificate =
          make_certificate(complex, moves, coset_representative(moves, result.position), m, mode, options.sharply);
    }
    return result;
  }

  result.space = options.samples;
  const std::uint64_t blocks = (options.samples + kSampleBlock - 1) / kSampleBlock;
  detail::for_each_block(blocks, options.workers, [&](std::uint64_t b) {
    const std::uint64_t begin = b * kSampleBlock;
    if (begin > found.load()) return false;
    auto rng = SplitMix64::stream(options.seed, b);
    const std::uint64_t count = std::min(kSampleBlock, options.samples - begin);
    for (std::uint64_t i = 0; i < count; ++i) {
      const VertexSet rep = moves.reduce(random_subset(rng, n));
      if (tester.coset_legal(rep)) {
        record(begin + i);
        return false;
      }
    }
    return true;
  });
  if (found.load() != kNone) {
    result.position = found.load();
    const std::uint64_t b = result.position / kSampleBlock;
    auto rng = SplitMix64::stream(options.seed, b);
    VertexSet state;
    for (std::uint64_t i = b * kSampleBlock; i <= result.position; ++i) state = random_subset(rng, n);
    result.certificate = make_certificate(complex, moves, moves.reduce(state), m, mode, options.sharply);
  }
  return result;
}

PigeonholeReport pigeonhole_check(const FlagComplex& complex, int m, LegalityMode mode, bool sharply,
                                  const SearchOptions& options) {
  const int k = m - 1;
  if (mode == LegalityMode::Connectivity && k > 0) {
    throw Error(ErrorCode::UnsupportedDegree, "connectivity mode supports only m - 1 in {-1, 0}");
  }
  if (sharply && m != dimension(complex)) {
    throw Error(ErrorCode::InvalidArgument, "the sharp count needs m = dim L = " + std::to_string(dimension(complex)));
  }
  PigeonholeReport report;
  report.vertices = complex.vertex_count();
  report.chromatic = chromatic_number(complex).colors;
  report.m = m;
  report.sharply = sharply;
  report.exhaustive = options.strategy == Strategy::Exhaustive;
  report.threshold_log2 = static_cast<int>(report.vertices) - static_cast<int>(report.chromatic) - 1;
  if (report.threshold_log2 >= 0 && report.threshold_log2 < 64) {
    report.threshold = std::uint64_t{1} << report.threshold_log2;
  }

  const Predicate bad{PredicateKind::NotAcyclic, k};
  const Predicate top{PredicateKind::TrivialTop, m};
  if (report.exhaustive) {
    report.bad = census(complex, bad, options.workers, options.vertex_cap);
    std::uint64_t pigeons = report.bad.hits;
    if (sharply) {
      report.top = census(complex, top, options.workers, options.vertex_cap);
      pigeons += report.top->hits;
    }
    report.verdict = pigeons < report.threshold ? PigeonholeVerdict::Certified : PigeonholeVerdict::NotImplied;
  } else {
    report.bad = estimate_fraction(complex, bad, options.samples, options.seed, options.workers);
    if (sharply) report.top = estimate_fraction(complex, top, options.samples, options.seed + 1, options.workers);
    report.verdict = PigeonholeVerdict::Estimated;
  }
  return report;
}

}  // namespace fiberscope
