#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace fiberscope {

/// Fixed-width bit vector over the vertices of a complex.
///
/// Doubles as an element of the group (Z/2)^width: `^` is the group
/// operation and the empty set is the identity. Bits past `width()` are kept
/// zero so equality and hashing are plain word comparisons.
class VertexSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  VertexSet() = default;
  explicit VertexSet(std::size_t width);
  VertexSet(std::size_t width, std::initializer_list<std::size_t> members);

  static VertexSet full(std::size_t width);
  /// Low `width` bits of `bits` (width <= 64).
  static VertexSet from_word(std::size_t width, Word bits);
  /// Parses the big-endian hex form produced by `to_hex`.
  static VertexSet from_hex(std::size_t width, const std::string& hex);

  std::size_t width() const noexcept { return width_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  const std::vector<Word>& words() const noexcept { return words_; }
  /// First word; the whole set when width <= 64.
  Word low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  bool test(std::size_t i) const;
  void set(std::size_t i);
  void reset(std::size_t i);
  void flip(std::size_t i);

  std::size_t count() const noexcept;
  bool empty() const noexcept;
  bool any() const noexcept { return !empty(); }
  /// Lowest member, or width() when empty.
  std::size_t first() const noexcept;
  /// Lowest member greater than i, or width() when none.
  std::size_t next(std::size_t i) const noexcept;

  std::vector<std::size_t> members() const;
  VertexSet complement() const;
  bool is_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  VertexSet& operator^=(const VertexSet& other);
  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator|=(const VertexSet& other);
  /// Set difference.
  VertexSet& operator-=(const VertexSet& other);

  friend VertexSet operator^(VertexSet a, const VertexSet& b) { return a ^= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  /// Lexicographic on (width, words from the high end); gives a total order for containers.
  friend bool operator<(const VertexSet& a, const VertexSet& b);

  /// Big-endian hex, ceil(width/4) digits; vertex 0 is the lowest bit.
  std::string to_hex() const;
  std::size_t hash() const noexcept;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word bits = words_[w];
      while (bits != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
        f(w * kWordBits + bit);
        bits &= bits - 1;
      }
    }
  }

 private:
  void check_width(const VertexSet& other) const;
  void check_index(std::size_t i) const;
  void trim() noexcept;

  std::size_t width_ = 0;
  std::vector<Word> words_;
};

struct VertexSetHash {
  std::size_t operator()(const VertexSet& s) const noexcept { return s.hash(); }
};

}  // namespace fiberscope
