// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>

#include "nhim/interval.hpp"
#include "nhim/interval_matrix.hpp"

namespace nhim {

// Block-norm bounds of a derivative enclosure, for the unit quadratic forms
// alpha(x)=|x|^2, beta(y)=|y|^2, gamma(theta)=|theta|^2:
//
//   |A11| <= C        |A12| <= eps_c        |A13| <= eps_c
//   mu <= |A21|_m, |A21| <= M
//   alpha <= |A22|_m, |A22| <= A_up         |A23| <= eps_u
//   |A31| <= M        |A32| <= eps_s        |A33| <= beta
struct DerivativeBounds {
  double C = 0.0;
  double eps_c = 0.0;
  double mu = 0.0;
  double M = 0.0;
  double A_up = 0.0;
  double alpha = 0.0;
  double eps_u = 0.0;
  double eps_s = 0.0;
  double beta = 0.0;

  // Throws InvalidArgument if any field is negative or not finite, or if
  // alpha > A_up or mu > M.
  void validate() const;

  // Reads the nine bounds off a block enclosure (upper bounds rounded up,
  // lower bounds rounded down).
  static DerivativeBounds from_blocks(const BlockBounds& blocks);
};

// Coefficients with Q_h(Ap) >= -a|p1|^2 + b|p2|^2 - c|p3|^2 where
// Q_h(p) = -|p1|^2 + |p2|^2 - |p3|^2. b may be negative.
struct AbcCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

// Valid for every member matrix of the enclosure; a and c are rounded up and
// b rounded down.
AbcCoefficients coeffs_abc(const BlockBounds& blocks);

struct ConeVerdict {
  bool holds = false;
  double m = 0.0;
  // Smallest rigorous slack across the inequalities (negative if one fails).
  double margin = 0.0;
  std::optional<double> rescale_v;
  // Left-hand sides of the three inequalities and their individual slacks.
  std::array<Interval, 3> lhs{};
  std::array<double, 3> slack{};
};

// Forward cone conditions with expansion rate m:
//   C^2 - mu^2 + M^2 + 2 C eps_c + M (A + eps_u + eps_s + beta)              < m
//   -eps_c^2 + alpha^2 - eps_s^2 - eps_c (C + eps_c) - A (M + eps_u)
//            - eps_s (M + beta)                                              > m
//   eps_c^2 + beta^2 + eps_c (C + eps_c) + eps_u (M + A) + beta (M + eps_s)  < m
// A "holds" verdict is rigorous; a failure is only advisory.
// Throws InvalidArgument if m <= 1 or the bounds are invalid.
ConeVerdict check_cone_conditions(const DerivativeBounds& b, double m);

// Same conditions after rescaling the base coordinate by v: mu and M become
// mu/v and M/v, eps_c becomes v*eps_c. Throws InvalidArgument if m <= 1 or
// v <= 0.
ConeVerdict check_cone_conditions_rescaled(const DerivativeBounds& b, double m, double v);

// First v in 1, 2, 4, ..., 2^64 at which the rescaled conditions hold.
std::optional<double> suggest_v(const DerivativeBounds& b, double m);

}  // namespace nhim
