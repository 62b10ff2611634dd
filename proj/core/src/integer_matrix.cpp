#include "fiberscope/integer_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace fiberscope {

IntegerMatrix IntegerMatrix::diagonal(const std::vector<std::int64_t>& entries) {
  IntegerMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::int64_t x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        std::int64_t prod = 0;
        std::int64_t sum = 0;
        if (__builtin_mul_overflow(x, b(k, j), &prod) ||
            __builtin_add_overflow(out(i, j), prod, &sum)) {
          throw std::overflow_error("integer matrix product overflow");
        }
        out(i, j) = sum;
      }
    }
  }
  return out;
}

namespace {

struct Overflow {};

// Entry arithmetic: machine integers throw Overflow, BigInt never does.
inline std::int64_t abs_of(std::int64_t v) {
  if (v == INT64_MIN) throw Overflow{};
  return v < 0 ? -v : v;
}
inline BigInt abs_of(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

inline std::int64_t sub_mul(std::int64_t a, std::int64_t q, std::int64_t b) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
  return out;
}
inline BigInt sub_mul(const BigInt& a, const BigInt& q, const BigInt& b) { return a - q * b; }

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Overflow{};
  return out;
}
inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }

template <typename T>
class SmithReducer {
 public:
  SmithReducer(std::vector<T> data, std::size_t rows, std::size_t cols)
      : a_(std::move(data)), rows_(rows), cols_(cols) {}

  std::pair<std::size_t, std::vector<T>> run() {
    std::vector<T> diag;
    std::size_t t = 0;
    while (t < rows_ && t < cols_) {
      std::size_t pr = 0;
      std::size_t pc = 0;
      if (!smallest_in_block(t, pr, pc)) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      reduce_pivot(t);
      diag.push_back(abs_of(at(t, t)));
      ++t;
    }
    return {t, std::move(diag)};
  }

 private:
  T& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  bool smallest_in_block(std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    T best{};
    for (std::size_t r = t; r < rows_; ++r) {
      for (std::size_t c = t; c < cols_; ++c) {
        const T& v = at(r, c);
        if (v == 0) continue;
        T av = abs_of(v);
        if (!found || av < best) {
          best = std::move(av);
          pr = r;
          pc = c;
          found = true;
          if (best == 1) return true;
        }
      }
    }
    return found;
  }

  void swap_rows(std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(r1, c), at(r2, c));
  }

  void swap_cols(std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, c1), at(r, c2));
  }

  // Clears row t and column t, and enforces divisibility of the remaining block by the pivot.
  void reduce_pivot(std::size_t t) {
    while (true) {
      bool remainder = false;
      for (std::size_t r = t + 1; r < rows_; ++r) {
        if (at(r, t) == 0) continue;
        const T q = at(r, t) / at(t, t);
        if (q != 0) {
          for (std::size_t c = t; c < cols_; ++c) {
            if (at(t, c) != 0) at(r, c) = sub_mul(at(r, c), q, at(t, c));
          }
        }
        if (at(r, t) != 0) remainder = true;
      }
      for (std::size_t c = t + 1; c < cols_; ++c) {
        if (at(t, c) == 0) continue;
        const T q = at(t, c) / at(t, t);
        if (q != 0) {
          for (std::size_t r = t; r < rows_; ++r) {
            if (at(r, t) != 0) at(r, c) = sub_mul(at(r, c), q, at(r, t));
          }
        }
        if (at(t, c) != 0) remainder = true;
      }
      if (remainder) {
        move_smaller_into_pivot(t);
        continue;
      }
      // row and column clear; look for a block entry the pivot does not divide
      bool fixed = false;
      for (std::size_t r = t + 1; r < rows_ && !fixed; ++r) {
        for (std::size_t c = t + 1; c < cols_; ++c) {
          if (at(r, c) != 0 && at(r, c) % at(t, t) != 0) {
            for (std::size_t k = t; k < cols_; ++k) at(t, k) = add(at(t, k), at(r, k));
            fixed = true;
            break;
          }
        }
      }
      if (!fixed) return;
    }
  }

  // After a reduction pass leaves remainders, the smallest of them beats the pivot.
  void move_smaller_into_pivot(std::size_t t) {
    T best = abs_of(at(t, t));
    std::size_t br = t;
    std::size_t bc = t;
    for (std::size_t r = t + 1; r < rows_; ++r) {
      if (at(r, t) != 0 && abs_of(at(r, t)) < best) {
        best = abs_of(at(r, t));
        br = r;
        bc = t;
      }
    }
    for (std::size_t c = t + 1; c < cols_; ++c) {
      if (at(t, c) != 0 && abs_of(at(t, c)) < best) {
        best = abs_of(at(t, c));
        br = t;
        bc = c;
      }
    }
    swap_rows(t, br);
    swap_cols(t, bc);
  }

  std::vector<T> a_;
  std::size_t rows_;
  std::size_t cols_;
};

SmithForm big_smith(std::vector<BigInt> data, std::size_t rows, std::size_t cols) {
  SmithReducer<BigInt> reducer(std::move(data), rows, cols);
  auto [rank, diag] = reducer.run();
  SmithForm out;
  out.rank = rank;
  out.divisors = std::move(diag);
  return out;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& matrix) {
  try {
    SmithReducer<std::int64_t> reducer(matrix.data(), matrix.rows(), matrix.cols());
    auto [rank, diag] = reducer.run();
    SmithForm out;
    out.rank = rank;
    out.divisors.assign(diag.begin(), diag.end());
    return out;
  } catch (const Overflow&) {
    std::vector<BigInt> data(matrix.data().begin(), matrix.data().end());
    SmithForm out = big_smith(std::move(data), matrix.rows(), matrix.cols());
    out.escalated = true;
    return out;
  }
}

SmithForm smith_normal_form(const std::vector<std::vector<BigInt>>& matrix, std::size_t cols) {
  std::vector<BigInt> data;
  data.reserve(matrix.size() * cols);
  for (const auto& row : matrix) {
    if (row.size() != cols) throw std::invalid_argument("ragged matrix rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return big_smith(std::move(data), matrix.size(), cols);
}

}  // namespace fiberscope
