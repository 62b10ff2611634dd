#include "fiberscope/vertex_set.hpp"

#include <algorithm>
#include <cctype>

#include "fiberscope/error.hpp"

namespace fiberscope {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::NotASimplex: return "NotASimplex";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UnknownChamber: return "UnknownChamber";
    case ErrorCode::NonUniqueMinimizer: return "NonUniqueMinimizer";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::DuplicatePanel: return "DuplicatePanel";
    case ErrorCode::NotMagic: return "NotMagic";
    case ErrorCode::ZeroWeightCube: return "ZeroWeightCube";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ImproperColoring: return "ImproperColoring";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InconsistentHeight: return "InconsistentHeight";
    case ErrorCode::BoundaryElement: return "BoundaryElement";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {
std::size_t words_for(std::size_t width) {
  return (width + VertexSet::kWordBits - 1) / VertexSet::kWordBits;
}
}  // namespace

VertexSet::VertexSet(std::size_t width) : width_(width), words_(words_for(width), 0) {}

VertexSet::VertexSet(std::size_t width, std::initializer_list<std::size_t> members)
    : VertexSet(width) {
  for (auto m : members) set(m);
}

VertexSet VertexSet::full(std::size_t width) {
  VertexSet s(width);
  std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
  s.trim();
  return s;
}

VertexSet VertexSet::from_word(std::size_t width, Word bits) {
  if (width > kWordBits) {
    throw Error(ErrorCode::WidthMismatch, "from_word requires width <= 64");
  }
  VertexSet s(width);
  if (width > 0) {
    s.words_[0] = bits;
    s.trim();
  }
  return s;
}

VertexSet VertexSet::from_hex(std::size_t width, const std::string& hex) {
  VertexSet s(width);
  std::size_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*it)));
    int nibble = 0;
    if (c >= '0' && c <= '9') {
      nibble = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      nibble = c - 'a' + 10;
    } else {
      throw Error(ErrorCode::ParseError, "invalid hex digit in state '" + hex + "'");
    }
    for (int b = 0; b < 4; ++b) {
      if ((nibble >> b) & 1) {
        if (bit + b >= width) {
          throw Error(ErrorCode::WidthMismatch, "hex state '" + hex + "' exceeds width");
        }
        s.set(bit + b);
      }
    }
  }
  return s;
}

void VertexSet::check_index(std::size_t i) const {
  if (i >= width_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "vertex " + std::to_string(i) + " out of range for width " + std::to_string(width_));
  }
}

void VertexSet::check_width(const VertexSet& other) const {
  if (other.width_ != width_) {
    throw Error(ErrorCode::WidthMismatch,
                std::to_string(width_) + " vs " + std::to_string(other.width_));
  }
}

void VertexSet::trim() noexcept {
  const std::size_t rem = width_ % kWordBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

bool VertexSet::test(std::size_t i) const {
  check_index(i);
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void VertexSet::set(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] |= Word{1} << (i % kWordBits);
}

void VertexSet::reset(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
}

void VertexSet::flip(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
}

std::size_t VertexSet::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool VertexSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t VertexSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return width_;
}

std::size_t VertexSet::next(std::size_t i) const noexcept {
  std::size_t j = i + 1;
  if (j >= width_) return width_;
  std::size_t w = j / kWordBits;
  Word bits = words_[w] & (~Word{0} << (j % kWordBits));
  while (true) {
    if (bits != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
    if (++w >= words_.size()) return width_;
    bits = words_[w];
  }
}

std::vector<std::size_t> VertexSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for_each([&](std::size_t v) { out.push_back(v); });
  return out;
}

VertexSet VertexSet::complement() const {
  VertexSet s(*this);
  for (auto& w : s.words_) w = ~w;
  s.trim();
  return s;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  check_width(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
  check_width(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & other.words_[w]) return true;
  }
  return false;
}

VertexSet& VertexSet::operator^=(const VertexSet& other) {
  check_width(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  check_width(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  check_width(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
  check_width(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

bool operator<(const VertexSet& a, const VertexSet& b) {
  if (a.width_ != b.width_) return a.width_ < b.width_;
  for (std::size_t w = a.words_.size(); w-- > 0;) {
    if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
  }
  return false;
}

std::string VertexSet::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = std::max<std::size_t>(1, (width_ + 3) / 4);
  std::string out(digits, '0');
  for (std::size_t d = 0; d < digits; ++d) {
    unsigned nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t bit = d * 4 + b;
      if (bit < width_ && ((words_[bit / kWordBits] >> (bit % kWordBits)) & 1U)) nibble |= 1U << b;
    }
    out[digits - 1 - d] = kDigits[nibble];
  }
  return out;
}

std::size_t VertexSet::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ width_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace fiberscope
