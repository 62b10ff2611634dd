#include "fiberscope/avoidance.hpp"

#include <algorithm>
#include <functional>
#include <vector>

#include "fiberscope/error.hpp"

namespace fiberscope {

Rational avoidance_probability(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "p(m,n) needs m, n >= 1");
  boost::multiprecision::cpp_int denom = 1;
  denom <<= static_cast<unsigned>(n);
  const Rational base(denom - 1, denom);
  Rational out = 1;
  for (std::size_t i = 0; i < m; ++i) out *= base;
  return out;
}

namespace {

using Mask = std::uint32_t;

std::uint64_t count_avoiding(std::size_t s_size, const std::vector<Mask>& blocks) {
  std::uint64_t count = 0;
  const Mask limit = s_size == 32 ? ~Mask{0} : (Mask{1} << s_size);
  for (Mask t = 0;; ++t) {
    bool avoids = true;
    for (auto a : blocks) {
      if ((t & a) == a) {
        avoids = false;
        break;
      }
    }
    if (avoids) ++count;
    if (t + 1 == limit) break;
  }
  return count;
}

}  // namespace

std::uint64_t brute_p_mn(std::size_t s_size, std::size_t m, std::size_t n, Placement placement) {
  if (m < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "p_{m,n}(S) needs m, n >= 1");
  if (s_size > 24) throw Error(ErrorCode::TooLarge, "|S| = " + std::to_string(s_size) + " exceeds 24");
  std::uint64_t best = 0;
  std::vector<Mask> blocks;

  if (placement == Placement::Canonical) {
    // nonincreasing size profiles, blocks laid out consecutively
    std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max_size,
                                                                          std::size_t used) {
      if (i == m) {
        best = std::max(best, count_avoiding(s_size, blocks));
        return;
      }
      for (std::size_t size = 0; size <= max_size && used + size <= s_size; ++size) {
        const Mask block = size == 0 ? 0 : static_cast<Mask>(((Mask{1} << size) - 1) << used);
        blocks.push_back(block);
        rec(i + 1, size, used + size);
        blocks.pop_back();
      }
    };
    rec(0, n, 0);
    return best;
  }

  std::vector<Mask> small;
  const Mask limit = Mask{1} << s_size;
  for (Mask a = 0; a < limit; ++a) {
    if (static_cast<std::size_t>(__builtin_popcount(a)) <= n) small.push_back(a);
  }
  // blocks chosen as a nondecreasing index sequence; the empty block may repeat
  std::function<void(std::size_t, std::size_t, Mask)> rec = [&](std::size_t i, std::size_t start, Mask used) {
    if (i == m) {
      best = std::max(best, count_avoiding(s_size, blocks));
      return;
    }
    for (std::size_t j = start; j < small.size(); ++j) {
      const Mask a = small[j];
      if (a & used) continue;
      blocks.push_back(a);
      rec(i + 1, a == 0 ? j : j + 1, used | a);
      blocks.pop_back();
    }
  };
  rec(0, 0, 0);
  return best;
}

}  // namespace fiberscope
