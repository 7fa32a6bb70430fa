// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "nhim/interval_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "nhim/error.hpp"

namespace nhim {
namespace {

void require_same_shape(const IntervalMatrix& a, const IntervalMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument(std::string("matrix shape mismatch in ") + op);
  }
}

// Floating-point inverse by Gauss-Jordan with partial pivoting. Only used as a
// preconditioner, so it needs no rigor; absent when numerically singular.
std::optional<std::vector<double>> approximate_inverse(std::vector<double> m, std::size_t n) {
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(m[r * n + col]) > std::fabs(m[pivot * n + col])) pivot = r;
    }
    const double p = m[pivot * n + col];
    if (p == 0.0 || !std::isfinite(p)) return std::nullopt;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(m[pivot * n + k], m[col * n + k]);
        std::swap(inv[pivot * n + k], inv[col * n + k]);
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      m[col * n + k] /= p;
      inv[col * n + k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r * n + col];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        m[r * n + k] -= f * m[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  for (double x : inv) {
    if (!std::isfinite(x)) return std::nullopt;
  }
  return inv;
}

// Lower bound of the smallest singular value over the members of a square
// interval matrix. With R ~ mid(A)^-1 and ||I - R A|| <= e < 1, every member
// P is invertible and ||P^-1|| <= ||R|| / (1 - e).
double square_sigma_min_lower(const IntervalMatrix& a) {
  const std::size_t n = a.rows();
  const auto r = approximate_inverse(a.midpoint(), n);
  if (!r) return 0.0;
  const IntervalMatrix rm = IntervalMatrix::from_points(n, n, *r);
  const IntervalMatrix e = IntervalMatrix::identity(n) - rm * a;
  const double e_norm = op_norm_upper(e);
  if (!(e_norm < 1.0)) return 0.0;
  const double r_norm = op_norm_upper(rm);
  if (!(r_norm > 0.0) || !std::isfinite(r_norm)) return 0.0;
  return std::max(0.0, rounding::div_down(rounding::sub_down(1.0, e_norm), r_norm));
}

}  // namespace

IntervalMatrix::IntervalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Interval(0.0)) {}

IntervalMatrix::IntervalMatrix(std::size_t rows, std::size_t cols, std::vector<Interval> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw InvalidArgument("matrix entry count does not match shape");
}

IntervalMatrix IntervalMatrix::identity(std::size_t n) {
  IntervalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Interval(1.0);
  return m;
}

IntervalMatrix IntervalMatrix::from_points(std::size_t rows, std::size_t cols, std::span<const double> values) {
  if (values.size() != rows * cols) throw InvalidArgument("matrix entry count does not match shape");
  std::vector<Interval> e(values.begin(), values.end());
  return IntervalMatrix(rows, cols, std::move(e));
}

bool IntervalMatrix::contains(std::span<const double> point) const {
  if (point.size() != entries_.size()) throw InvalidArgument("point matrix has wrong size");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!entries_[k].contains(point[k])) return false;
  }
  return true;
}

bool IntervalMatrix::contains(const IntervalMatrix& other) const {
  require_same_shape(*this, other, "contains");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!entries_[k].contains(other.entries_[k])) return false;
  }
  return true;
}

std::vector<double> IntervalMatrix::midpoint() const {
  std::vector<double> m;
  m.reserve(entries_.size());
  for (const auto& e : entries_) m.push_back(e.mid());
  return m;
}

IntervalMatrix IntervalMatrix::transpose() const {
  IntervalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b) {
  require_same_shape(a, b, "addition");
  IntervalMatrix r = a;
  for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
  return r;
}

IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
  require_same_shape(a, b, "subtraction");
  IntervalMatrix r = a;
  for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
  return r;
}

IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shape mismatch in product");
  IntervalMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Interval acc(0.0);
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  }
  return r;
}

IntervalMatrix operator*(const Interval& s, const IntervalMatrix& a) {
  IntervalMatrix r = a;
  for (auto& e : r.entries_) e = s * e;
  return r;
}

double op_norm_upper(const IntervalMatrix& a) {
  if (a.empty()) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return a(0, 0).mag();

  // ||P||_2 <= sqrt(||P||_1 ||P||_inf) and ||P||_2 <= ||P||_F, both monotone
  // in the entrywise magnitudes.
  std::vector<Interval> col_sums(a.cols(), Interval(0.0));
  double max_row = 0.0;
  Interval frob_sq(0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Interval row(0.0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Interval m(a(i, j).mag());
      row += m;
      col_sums[j] += m;
      frob_sq += sqr(m);
    }
    max_row = std::max(max_row, row.hi());
  }
  double max_col = 0.0;
  for (const auto& c : col_sums) max_col = std::max(max_col, c.hi());
  const double mixed = rounding::sqrt_up(rounding::mul_up(max_col, max_row));
  const double frob = rounding::sqrt_up(frob_sq.hi());
  return std::min(mixed, frob);
}

double min_norm_lower(const IntervalMatrix& a) {
  if (a.empty()) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return a(0, 0).mig();
  if (a.rows() < a.cols()) return 0.0;
  if (a.rows() == a.cols()) return square_sigma_min_lower(a);
  // Tall block: |Px|^2 = x^T (P^T P) x >= lambda_min(P^T P) |x|^2 and for the
  // symmetric positive semidefinite Gram matrix lambda_min = sigma_min.
  const IntervalMatrix gram = a.transpose() * a;
  if (gram.rows() == 1) return rounding::sqrt_down(gram(0, 0).mig());
  return rounding::sqrt_down(square_sigma_min_lower(gram));
}

BlockBounds::BlockBounds(std::size_t c, std::size_t u, std::size_t s) : dims_{c, u, s} {
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = 0; l < 3; ++l) blocks_[k][l] = IntervalMatrix(dims_[k], dims_[l]);
  }
}

BlockBounds::BlockBounds(std::size_t c, std::size_t u, std::size_t s,
                         std::array<std::array<IntervalMatrix, 3>, 3> blocks)
    : dims_{c, u, s}, blocks_(std::move(blocks)) {
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = 0; l < 3; ++l) {
      if (blocks_[k][l].rows() != dims_[k] || blocks_[k][l].cols() != dims_[l]) {
        throw InvalidArgument("block (" + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                              ") has shape inconsistent with the c/u/s layout");
      }
    }
  }
}

BlockBounds BlockBounds::from_matrix(const IntervalMatrix& full, std::size_t c, std::size_t u, std::size_t s) {
  const std::size_t n = c + u + s;
  if (full.rows() != n || full.cols() != n) throw InvalidArgument("matrix size does not match c+u+s");
  const std::array<std::size_t, 3> dims{c, u, s};
  const std::array<std::size_t, 3> start{0, c, c + u};
  std::array<std::array<IntervalMatrix, 3>, 3> blocks;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = 0; l < 3; ++l) {
      IntervalMatrix b(dims[k], dims[l]);
      for (std::size_t i = 0; i < dims[k]; ++i) {
        for (std::size_t j = 0; j < dims[l]; ++j) b(i, j) = full(start[k] + i, start[l] + j);
      }
      blocks[k][l] = std::move(b);
    }
  }
  return BlockBounds(c, u, s, std::move(blocks));
}

BlockBounds BlockBounds::scalar(const std::array<std::array<Interval, 3>, 3>& entries) {
  std::array<std::array<IntervalMatrix, 3>, 3> blocks;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = 0; l < 3; ++l) blocks[k][l] = IntervalMatrix(1, 1, {entries[k][l]});
  }
  return BlockBounds(1, 1, 1, std::move(blocks));
}

void BlockBounds::set_block(std::size_t k, std::size_t l, IntervalMatrix m) {
  if (m.rows() != dims_.at(k) || m.cols() != dims_.at(l)) {
    throw InvalidArgument("replacement block has inconsistent shape");
  }
  blocks_[k][l] = std::move(m);
}

IntervalMatrix BlockBounds::to_matrix() const {
  const std::size_t n = dims_[0] + dims_[1] + dims_[2];
  const std::array<std::size_t, 3> start{0, dims_[0], dims_[0] + dims_[1]};
  IntervalMatrix full(n, n);
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = 0; l < 3; ++l) {
      for (std::size_t i = 0; i < dims_[k]; ++i) {
        for (std::size_t j = 0; j < dims_[l]; ++j) full(start[k] + i, start[l] + j) = blocks_[k][l](i, j);
      }
    }
  }
  return full;
}

BlockBounds BlockBounds::swap_fiber_roles() const {
  constexpr std::array<std::size_t, 3> perm{0, 2, 1};
  std::array<std::array<IntervalMatrix, 3>, 3> blocks;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = 0; l < 3; ++l) blocks[k][l] = blocks_[perm[k]][perm[l]];
  }
  return BlockBounds(dims_[0], dims_[2], dims_[1], std::move(blocks));
}

}  // namespace nhim
