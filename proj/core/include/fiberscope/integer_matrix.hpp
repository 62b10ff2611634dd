#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fiberscope {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix. Entries start as machine integers; Smith
/// normal form promotes to arbitrary precision internally when needed.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const std::vector<std::int64_t>& data() const noexcept { return data_; }

  static IntegerMatrix diagonal(const std::vector<std::int64_t>& entries);
  static IntegerMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Matrix product with overflow checking on 64-bit entries (throws std::overflow_error).
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);

struct SmithForm {
  std::size_t rank = 0;
  /// Invariant factors d_1 | d_2 | ... | d_rank, all positive.
  std::vector<BigInt> divisors;
  /// True when 64-bit arithmetic overflowed and the computation was redone in arbitrary precision.
  bool escalated = false;
};

/// Exact Smith normal form. Pivot = smallest nonzero absolute value in the
/// remaining block, ties by lowest row then column.
SmithForm smith_normal_form(const IntegerMatrix& matrix);
SmithForm smith_normal_form(const std::vector<std::vector<BigInt>>& matrix, std::size_t cols);

}  // namespace fiberscope
