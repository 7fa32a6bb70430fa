// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nhim/interval.hpp"

namespace nhim {

// Dense row-major matrix of intervals. A point matrix P is a member when
// P(i,j) lies in entry (i,j) for every i, j.
class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t rows, std::size_t cols);
  IntervalMatrix(std::size_t rows, std::size_t cols, std::vector<Interval> entries);

  static IntervalMatrix identity(std::size_t n);
  // Point matrix from row-major doubles.
  static IntervalMatrix from_points(std::size_t rows, std::size_t cols, std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Interval& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Interval& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  // Row-major point matrix of size rows*cols.
  bool contains(std::span<const double> point) const;
  bool contains(const IntervalMatrix& other) const;

  std::vector<double> midpoint() const;
  IntervalMatrix transpose() const;

  friend IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b);
  friend IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b);
  friend IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b);
  friend IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a);
  friend bool operator==(const IntervalMatrix& a, const IntervalMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Interval> entries_;
};

// Rigorous upper bound of the Euclidean operator norm ||P|| over all members P.
// Exact (max(|lo|, |hi|)) for 1x1 matrices.
double op_norm_upper(const IntervalMatrix& a);

// Rigorous lower bound of ||P||_m = inf_{|x|=1} |Px| over all members P.
// Returns 0 whenever no positive bound can be established.
double min_norm_lower(const IntervalMatrix& a);

// Block layout of a (c+u+s)x(c+u+s) matrix: index 0 is the central (base)
// direction, 1 the unstable and 2 the stable one. block(k, l) has
// dims[k] rows and dims[l] columns.
class BlockBounds {
 public:
  BlockBounds(std::size_t c, std::size_t u, std::size_t s);
  // Throws InvalidArgument when a block shape does not match the layout.
  BlockBounds(std::size_t c, std::size_t u, std::size_t s,
              std::array<std::array<IntervalMatrix, 3>, 3> blocks);

  // Splits a full square matrix according to the layout.
  static BlockBounds from_matrix(const IntervalMatrix& full, std::size_t c, std::size_t u, std::size_t s);
  // 1+1+1 layout from a 3x3 array of intervals.
  static BlockBounds scalar(const std::array<std::array<Interval, 3>, 3>& entries);

  std::size_t dim(std::size_t k) const { return dims_.at(k); }
  std::size_t c() const noexcept { return dims_[0]; }
  std::size_t u() const noexcept { return dims_[1]; }
  std::size_t s() const noexcept { return dims_[2]; }

  const IntervalMatrix& block(std::size_t k, std::size_t l) const { return blocks_.at(k).at(l); }
  // Replaces a block; throws InvalidArgument on shape mismatch.
  void set_block(std::size_t k, std::size_t l, IntervalMatrix m);

  IntervalMatrix to_matrix() const;

  // Exchanges the unstable and stable roles (rows and columns 1 <-> 2).
  BlockBounds swap_fiber_roles() const;

 private:
  std::array<std::size_t, 3> dims_;
  std::array<std::array<IntervalMatrix, 3>, 3> blocks_;
};

}  // namespace nhim
