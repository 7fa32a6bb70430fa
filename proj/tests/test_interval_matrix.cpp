// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "nhim/error.hpp"
#include "nhim/interval_matrix.hpp"
#include "support.hpp"

namespace nhim {
namespace {

// Extreme singular values of an n x n point matrix from the eigenvalues of
// P^T P, computed by cyclic Jacobi rotations in long double.
struct Singular {
  long double min;
  long double max;
};

Singular singular_values(const std::vector<double>& p, std::size_t n) {
  std::vector<long double> g(n * n, 0.0L);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) g[i * n + j] += static_cast<long double>(p[k * n + i]) * p[k * n + j];
    }
  }
  for (int sweep = 0; sweep < 60; ++sweep) {
    long double off = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += g[i * n + j] * g[i * n + j];
    }
    if (off < 1e-60L) break;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const long double gij = g[i * n + j];
        if (gij == 0.0L) continue;
        const long double theta = (g[j * n + j] - g[i * n + i]) / (2 * gij);
        const long double t = (theta >= 0 ? 1.0L : -1.0L) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const long double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const long double a = g[k * n + i], b = g[k * n + j];
          g[k * n + i] = c * a - s * b;
          g[k * n + j] = s * a + c * b;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double a = g[i * n + k], b = g[j * n + k];
          g[i * n + k] = c * a - s * b;
          g[j * n + k] = s * a + c * b;
        }
      }
    }
  }
  long double lo = g[0], hi = g[0];
  for (std::size_t i = 1; i < n; ++i) {
    lo = std::min(lo, g[i * n + i]);
    hi = std::max(hi, g[i * n + i]);
  }
  return {std::sqrt(std::max(lo, 0.0L)), std::sqrt(std::max(hi, 0.0L))};
}

IntervalMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double max_radius) {
  IntervalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = testing::random_interval(rng, 3.0, max_radius);
  }
  return m;
}

TEST(IntervalMatrix, ScalarNorms) {
  const IntervalMatrix a(1, 1, {Interval(-3, 2)});
  EXPECT_EQ(op_norm_upper(a), 3.0);
  EXPECT_EQ(min_norm_lower(IntervalMatrix(1, 1, {Interval(2, 3)})), 2.0);
  EXPECT_EQ(min_norm_lower(IntervalMatrix(1, 1, {Interval(-1, 1)})), 0.0);
  EXPECT_EQ(min_norm_lower(IntervalMatrix(1, 1, {Interval(-3, -2)})), 2.0);
}

TEST(IntervalMatrix, DiagonalNorm) {
  const IntervalMatrix d(2, 2, {Interval(2), Interval(0), Interval(0), Interval(1)});
  const double up = op_norm_upper(d);
  EXPECT_GE(up, 2.0);
  EXPECT_LE(up, 2.0 * (1 + 1e-12));
  const double low = min_norm_lower(d);
  EXPECT_LE(low, 1.0);
  EXPECT_GE(low, 1.0 - 1e-12);
}

TEST(IntervalMatrix, NormsSandwichSampledMembers) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const IntervalMatrix m = random_matrix(rng, n, trial % 3 == 0 ? 0.0 : 0.3);
    const double up = op_norm_upper(m);
    const double low = min_norm_lower(m);
    for (int s = 0; s < 20; ++s) {
      const auto p = testing::random_member(m, rng);
      const Singular sv = singular_values(p, n);
      ASSERT_GE(static_cast<long double>(up), sv.max * (1 - 1e-12L)) << "trial " << trial;
      ASSERT_LE(static_cast<long double>(low), sv.min + 1e-8L * (1 + sv.max)) << "trial " << trial;
      ++checked;
    }
  }
  EXPECT_EQ(checked, 20000);
}

TEST(IntervalMatrix, UpperBoundDominatesTenThousandMembers) {
  std::mt19937_64 rng(5);
  const IntervalMatrix m = random_matrix(rng, 3, 0.5);
  const double up = op_norm_upper(m);
  long double worst = 0;
  for (int s = 0; s < 10000; ++s) worst = std::max(worst, singular_values(testing::random_member(m, rng), 3).max);
  EXPECT_GE(static_cast<long double>(up), worst * (1 - 1e-12L));
}

TEST(IntervalMatrix, LowerBoundBelowTenThousandMembers) {
  std::mt19937_64 rng(6);
  const IntervalMatrix m(2, 2, {Interval(3, 3.2), Interval(0.1, 0.3), Interval(-0.2, 0.1), Interval(2, 2.5)});
  const double low = min_norm_lower(m);
  EXPECT_GT(low, 0.0);
  long double best = 1e300L;
  for (int s = 0; s < 10000; ++s) best = std::min(best, singular_values(testing::random_member(m, rng), 2).min);
  EXPECT_LE(static_cast<long double>(low), best * (1 + 1e-12L));
}

TEST(IntervalMatrix, RectangularLowerBounds) {
  // A tall block has a positive lower bound, a wide one cannot.
  const IntervalMatrix tall(2, 1, {Interval(3), Interval(4)});
  EXPECT_GT(min_norm_lower(tall), 4.99);
  EXPECT_LE(min_norm_lower(tall), 5.0);
  EXPECT_EQ(min_norm_lower(tall.transpose()), 0.0);
  EXPECT_GE(op_norm_upper(tall.transpose()), 5.0);
}

TEST(IntervalMatrix, ProductContainsMemberProducts) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const IntervalMatrix a = random_matrix(rng, 3, 0.2), b = random_matrix(rng, 3, 0.2);
    const IntervalMatrix ab = a * b;
    const auto p = testing::random_member(a, rng), q = testing::random_member(b, rng);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        Interval acc(0);
        for (int k = 0; k < 3; ++k) acc += Interval(p[i * 3 + k]) * Interval(q[k * 3 + j]);
        ASSERT_TRUE(ab(i, j).contains(acc));
      }
    }
  }
}

TEST(IntervalMatrix, ShapeErrors) {
  EXPECT_THROW(IntervalMatrix(2, 2) * IntervalMatrix(3, 3), InvalidArgument);
  EXPECT_THROW(IntervalMatrix(2, 2) + IntervalMatrix(2, 3), InvalidArgument);
  EXPECT_THROW(IntervalMatrix(2, 2, std::vector<Interval>(3)), InvalidArgument);
}

TEST(BlockBounds, SplitsAndReassembles) {
  std::vector<double> v(16);
  for (int k = 0; k < 16; ++k) v[k] = k;
  const IntervalMatrix full = IntervalMatrix::from_points(4, 4, v);
  const BlockBounds b = BlockBounds::from_matrix(full, 1, 2, 1);
  EXPECT_EQ(b.block(1, 1).rows(), 2u);
  EXPECT_EQ(b.block(1, 1)(1, 0), Interval(9));
  EXPECT_EQ(b.block(2, 0)(0, 0), Interval(12));
  EXPECT_EQ(b.to_matrix(), full);
  EXPECT_THROW(BlockBounds::from_matrix(full, 1, 1, 1), InvalidArgument);
}

TEST(BlockBounds, SwappingFiberRolesExchangesBlocks) {
  const BlockBounds b = BlockBounds::scalar({{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}});
  const BlockBounds s = b.swap_fiber_roles();
  EXPECT_EQ(s.block(1, 1)(0, 0), Interval(9));
  EXPECT_EQ(s.block(2, 2)(0, 0), Interval(5));
  EXPECT_EQ(s.block(1, 2)(0, 0), Interval(8));
  EXPECT_EQ(s.block(0, 1)(0, 0), Interval(3));
  EXPECT_EQ(s.swap_fiber_roles().to_matrix(), b.to_matrix());
}

TEST(BlockBounds, RejectsMismatchedBlocks) {
  BlockBounds b(1, 2, 1);
  EXPECT_THROW(b.set_block(1, 1, IntervalMatrix(1, 2)), InvalidArgument);
  EXPECT_NO_THROW(b.set_block(1, 1, IntervalMatrix::identity(2)));
}

}  // namespace
}  // namespace nhim
