#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace apexforge::linalg {

/// Dense row-major matrix of residues modulo a prime.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<std::uint32_t>& data() { return data_; }
  const std::vector<std::uint32_t>& data() const { return data_; }

  bool is_zero() const;
  Matrix transposed() const;
  /// Columns of `other` appended to the right; row counts must match.
  Matrix hconcat(const Matrix& other) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

/// Rank over GF(p), p prime. Entries must already be reduced.
std::size_t rank(Matrix m, std::uint32_t p);

/// Reduced row echelon form over GF(p).
struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};
Rref rref(Matrix m, std::uint32_t p);

/// Basis of {x : m x = 0}, one vector per free column, each with a 1 in its
/// free column.
std::vector<std::vector<std::uint32_t>> nullspace(const Matrix& m, std::uint32_t p);

/// Echelon basis grown one vector at a time, with undo. Used by subset
/// searches that extend and backtrack.
class IncrementalBasis {
 public:
  IncrementalBasis(std::size_t dim, std::uint32_t p) : dim_(dim), p_(p) {}

  std::size_t size() const { return pivots_.size(); }
  /// Reduces v against the basis; appends it and returns true if it is
  /// independent, otherwise leaves the basis unchanged and returns false.
  bool push(std::span<const std::uint32_t> v);
  /// Removes the most recently appended vector.
  void pop();

 private:
  std::size_t dim_;
  std::uint32_t p_;
  std::vector<std::vector<std::uint32_t>> rows_;  // normalized: 1 at pivot
  std::vector<std::size_t> pivots_;
};

/// Row echelon form built by inserting rows one at a time over GF(p).
/// Columns are eliminated left to right, so the pivot columns are the
/// leading positions of the row space.
class RowEchelon {
 public:
  RowEchelon(std::size_t cols, std::uint32_t p);

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rank_; }
  /// Reduces `row` (entries in [0, p)) against the stored pivots; keeps it
  /// and returns true if it is independent.
  bool insert(std::span<const std::uint32_t> row);
  /// 1 at each pivot column.
  const std::vector<char>& pivot_mask() const { return is_pivot_; }

 private:
  std::size_t cols_;
  std::uint32_t p_;
  std::size_t rank_ = 0;
  std::vector<char> is_pivot_;
  std::vector<std::uint32_t> pivot_row_;    // per column, when is_pivot_
  std::vector<std::uint32_t> storage_;      // pivot rows, cols_ each
  std::vector<std::uint32_t> work_;
};

/// m * x over GF(p).
std::vector<std::uint32_t> apply(const Matrix& m, std::span<const std::uint32_t> x, std::uint32_t p);

}  // namespace apexforge::linalg
