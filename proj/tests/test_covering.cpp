// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nhim/covering.hpp"
#include "nhim/error.hpp"
#include "support.hpp"

namespace nhim {
namespace {

// One-dimensional base, unstable and stable directions.
ChartTripleInput scalar_triple(Interval a22, Interval a23, Interval a32, Interval a33, double eps_u = 0.5,
                               double eps_s = 0.5) {
  ChartTripleInput t;
  t.j = 3;
  t.i0 = 1;
  t.i1 = 7;
  t.zero_base = {Interval(3, 4)};
  t.zero_u = {Interval(0)};
  t.zero_s = {Interval(0)};
  t.target_window = {Interval(0, 9)};
  t.jac = BlockBounds::scalar({{{1, 0, 0}, {0, a22, a23}, {0, a32, a33}}});
  t.eps_u = eps_u;
  t.eps_s = eps_s;
  return t;
}

ChartTripleInput passing() { return scalar_triple(2, 0, 0, 0.1); }

TEST(ZeroImage, ZeroSectionInsideWindow) {
  const auto c = check_zero_image(passing());
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.slack, 0.5);
}

TEST(ZeroImage, FiberOutsideBallFails) {
  ChartTripleInput t = passing();
  t.zero_u = {Interval(0, 1.01 * t.eps_u)};
  EXPECT_FALSE(check_zero_image(t).holds);
  t.zero_u = {Interval(0, t.eps_u)};
  EXPECT_TRUE(check_zero_image(t).holds);
  t.zero_s = {Interval(-0.6, 0)};
  EXPECT_FALSE(check_zero_image(t).holds);
}

TEST(ZeroImage, BaseMustStayInsideOpenWindow) {
  ChartTripleInput t = passing();
  t.zero_base = {Interval(0, 4)};
  EXPECT_FALSE(check_zero_image(t).holds);
  t.zero_base = {Interval(8.5, 9.5)};
  EXPECT_FALSE(check_zero_image(t).holds);
}

TEST(ZeroImage, TwoDimensionalFiberUsesEuclideanNorm) {
  ChartTripleInput t;
  t.zero_base = {Interval(3, 4)};
  t.target_window = {Interval(0, 9)};
  t.zero_u = {Interval(0.375), Interval(0.5)};
  t.zero_s = {Interval(0)};
  t.jac = BlockBounds(1, 2, 1);
  t.eps_u = 0.625;
  t.eps_s = 0.5;
  EXPECT_TRUE(check_zero_image(t).holds);
  t.eps_u = 0.62;
  EXPECT_FALSE(check_zero_image(t).holds);
}

TEST(ChartTriple, ValidatesRadiiAndShapes) {
  ChartTripleInput t = passing();
  t.eps_s = 1.0;
  EXPECT_THROW(t.validate(), InvalidArgument);
  t = passing();
  t.eps_u = 0.0;
  EXPECT_THROW(check_expansion(t), InvalidArgument);
  t = passing();
  t.zero_u = {Interval(0), Interval(0)};
  EXPECT_THROW(check_zero_image(t), InvalidArgument);
}

TEST(Expansion, Examples) {
  EXPECT_TRUE(check_expansion(scalar_triple(2, 0, 0, 0.1)).holds);
  const auto fail = check_expansion(scalar_triple(Interval(1.1, 1.2), Interval(-0.5, 0.5), 0, 0.1));
  EXPECT_FALSE(fail.holds);
  // Corner oracle: the worst member gives |1.1 x + 0.5 y| = 0.6 at x = 1, y = -1.
  EXPECT_LE(fail.lhs.lo(), 1.1 - 0.5);
  EXPECT_LT(fail.slack, 0.0);
}

TEST(Contraction, Examples) {
  EXPECT_TRUE(check_contraction(scalar_triple(2, 0, 0, 0.1)).holds);
  EXPECT_FALSE(check_contraction(scalar_triple(2, 0, 0, 0.9, 0.5, 0.2)).holds);
}

TEST(Covering, SinglePassingTriple) {
  const CoveringVerdict v = check_covering({passing()});
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.first_failure().has_value());
}

TEST(Covering, EmptyListThrows) { EXPECT_THROW(check_covering({}), InvalidArgument); }

TEST(Covering, NamesTheFailingTriple) {
  std::vector<ChartTripleInput> triples(6, passing());
  for (int k = 0; k < 6; ++k) triples[k].j = k;
  triples[4] = scalar_triple(2, 0, 0, 0.9, 0.5, 0.2);
  triples[4].j = 4;
  triples[4].i0 = 2;
  triples[4].i1 = 8;
  const CoveringVerdict v = check_covering(triples);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.first_failure().has_value());
  const auto& d = v.triples[*v.first_failure()];
  EXPECT_EQ(d.j, 4);
  EXPECT_EQ(d.i0, 2);
  EXPECT_EQ(d.i1, 8);
  EXPECT_TRUE(d.zero_image_ok);
  EXPECT_TRUE(d.expansion_ok);
  EXPECT_FALSE(d.contraction_ok);
}

TEST(Covering, ThreadsKeepInputOrder) {
  std::mt19937_64 rng(1);
  std::vector<ChartTripleInput> triples;
  for (int k = 0; k < 101; ++k) {
    ChartTripleInput t = scalar_triple(testing::random_interval(rng, 3, 0.2), testing::random_interval(rng, 0.3, 0.1),
                                       testing::random_interval(rng, 0.3, 0.1), testing::random_interval(rng, 0.5, 0.1));
    t.j = k;
    triples.push_back(t);
  }
  const CoveringVerdict one = check_covering(triples, 1);
  const CoveringVerdict four = check_covering(triples, 4);
  ASSERT_EQ(one.triples.size(), four.triples.size());
  for (std::size_t k = 0; k < one.triples.size(); ++k) {
    EXPECT_EQ(one.triples[k].j, static_cast<int>(k));
    EXPECT_EQ(four.triples[k].j, static_cast<int>(k));
    EXPECT_EQ(one.triples[k].expansion_lower, four.triples[k].expansion_lower);
    EXPECT_EQ(one.triples[k].contraction_upper, four.triples[k].contraction_upper);
  }
  EXPECT_EQ(one.holds, four.holds);
}

// Whenever the checks pass, every sampled member stretches the unit fiber box
// as claimed: |a22 x + a23 y| > 1 + eps_u for |x| = 1, |y| <= 1, and
// |a32 x + a33 y| < 1 - eps_s for |x|, |y| <= 1.
TEST(Covering, PassingChecksAreSoundOnMembers) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> radius(0.05, 0.6), unit(-1, 1);
  int expansions = 0, contractions = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const ChartTripleInput t =
        scalar_triple(testing::random_interval(rng, 3, 0.3), testing::random_interval(rng, 0.5, 0.2),
                      testing::random_interval(rng, 0.5, 0.2), testing::random_interval(rng, 0.5, 0.2), radius(rng),
                      radius(rng));
    const bool exp_ok = check_expansion(t).holds;
    const bool con_ok = check_contraction(t).holds;
    expansions += exp_ok;
    contractions += con_ok;
    const IntervalMatrix full = t.jac.to_matrix();
    for (int s = 0; s < 50; ++s) {
      const auto p = testing::random_member(full, rng);
      const double a22 = p[4], a23 = p[5], a32 = p[7], a33 = p[8];
      const double y = s % 5 == 0 ? (s % 10 == 0 ? 1.0 : -1.0) : unit(rng);
      for (double x : {-1.0, 1.0}) {
        if (exp_ok) {
          ASSERT_GT(std::fabs(a22 * x + a23 * y), 1 + t.eps_u) << trial;
        }
        if (con_ok) {
          ASSERT_LT(std::fabs(a32 * x + a33 * y), 1 - t.eps_s) << trial;
        }
      }
    }
  }
  EXPECT_GT(expansions, 0);
  EXPECT_GT(contractions, 0);
}

}  // namespace
}  // namespace nhim
