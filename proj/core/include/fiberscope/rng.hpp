#pragma once

#include <cstdint>

#include "fiberscope/vertex_set.hpp"

namespace fiberscope {

/// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, then
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31).
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  /// Independent stream `index` of `seed`: the generator seeded with mix(seed ^ mix(index * gamma + gamma)).
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix(seed ^ mix(index * kGamma + kGamma)));
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  using result_type = std::uint64_t;
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }
  result_type operator()() noexcept { return next(); }

 private:
  std::uint64_t state_;
};

/// Uniform random subset: one draw per 64-bit word, low bits first.
inline VertexSet random_subset(SplitMix64& rng, std::size_t width) {
  if (width <= VertexSet::kWordBits) return VertexSet::from_word(width, width == 0 ? 0 : rng.next());
  VertexSet s(width);
  for (std::size_t w = 0; w < s.word_count(); ++w) {
    const auto bits = rng.next();
    for (std::size_t b = 0; b < VertexSet::kWordBits && w * VertexSet::kWordBits + b < width; ++b) {
      if ((bits >> b) & 1U) s.set(w * VertexSet::kWordBits + b);
    }
  }
  return s;
}

}  // namespace fiberscope
