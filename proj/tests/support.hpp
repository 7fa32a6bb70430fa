// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

// Independent oracles shared by the unit tests and the acceptance binary.
// High-precision reference values come from MPFR.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nhim/interval.hpp"
#include "nhim/interval_matrix.hpp"

namespace nhim::testing {

enum class Op { add, sub, mul, div, sqrt, sin, cos };

std::string op_name(Op op);

// True iff r contains the exact real result of op(x, y) (y ignored for unary
// ops). The exact value is bracketed by 256-bit MPFR evaluations rounded down
// and up.
bool contains_exact(const Interval& r, Op op, double x, double y = 0.0);

// True iff r contains (p + q sqrt(s)) / d, evaluated with MPFR.
bool contains_sqrt_expression(const Interval& r, double p, double q, double s, double d);

struct PropertyResult {
  long long checked = 0;
  long long violations = 0;
  std::string first_violation;

  bool ok() const { return checked > 0 && violations == 0; }
};

// Random point evaluations of + - * / sqrt sin cos against MPFR.
PropertyResult interval_inclusion_property(long long samples, std::uint64_t seed);

// Lemma coefficients: for random block enclosures, a member matrix P and
// random vectors p, Q_h(Pp) >= -a|p1|^2 + b|p2|^2 - c|p3|^2. Near-ties are
// decided in exact arithmetic.
PropertyResult abc_sampling_property(int matrices, int vectors, std::uint64_t seed);

// Directly computed Henon fiber and full Jacobian enclosures lie inside the
// printed ones for random (epsilon, tau, eta, v).
PropertyResult henon_enclosure_property(int draws, std::uint64_t seed);

// Cone containment validator over a range of atlas sizes.
PropertyResult atlas_property(int v_min, int v_max);

// Uniform random member of an interval matrix (endpoints with probability 1/4 each).
std::vector<double> random_member(const IntervalMatrix& m, std::mt19937_64& rng);

// Random interval with midpoint in [-scale, scale] and radius up to
// max_radius (zero with probability 1/8).
Interval random_interval(std::mt19937_64& rng, double scale, double max_radius);

}  // namespace nhim::testing
