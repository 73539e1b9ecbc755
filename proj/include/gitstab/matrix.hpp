#pragma once

#include "gitstab/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gitstab {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t n);
  /// Columns given as vectors of equal length `rows`.
  static RationalMatrix from_columns(std::size_t rows, std::span<const RationalVector> columns);
  static RationalMatrix from_rows(std::size_t cols, std::span<const RationalVector> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  const std::vector<Rational>& entries() const noexcept { return entries_; }

  RationalVector column(std::size_t c) const;
  RationalVector row(std::size_t r) const;
  std::vector<RationalVector> columns() const;

  RationalMatrix transpose() const;
  /// Columns [first, first + count).
  RationalMatrix column_block(std::size_t first, std::size_t count) const;
  RationalMatrix row_block(std::size_t first, std::size_t count) const;
  RationalMatrix hconcat(const RationalMatrix& right) const;

  std::size_t rank() const;
  Rational determinant() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalVector operator*(const RationalMatrix& a, std::span<const Rational> x);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Reduced row echelon form. Pivot entries are 1 and pivot columns are
/// otherwise zero; zero rows are dropped from `reduced`.
struct RowEchelon {
  RationalMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon row_reduce(RationalMatrix m);

/// Kronecker product, row index (i, k) -> i * b.rows() + k.
RationalMatrix kronecker(const RationalMatrix& a, const RationalMatrix& b);

/// Inverse of a square matrix; throws Error(SingularFrame) when singular.
RationalMatrix inverse(const RationalMatrix& m);

}  // namespace gitstab
