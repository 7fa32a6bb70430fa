// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nhim/interval.hpp"
#include "nhim/interval_matrix.hpp"

namespace nhim {

// Data for one chart triple (j, i0, i1): f maps the part of D over V_j (seen
// in chart i0) into the domain of chart i1.
struct ChartTripleInput {
  int j = 0;
  int i0 = 0;
  int i1 = 0;
  // Enclosure of f_{i1 i0}(theta, 0, 0) over theta in eta_{i0}(V_j): base
  // coordinates (in chart i1), unstable and stable fiber coordinates.
  std::vector<Interval> zero_base;
  std::vector<Interval> zero_u;
  std::vector<Interval> zero_s;
  // eta_{i1}(U_{i1}) as a box whose interior is the open window.
  std::vector<Interval> target_window;
  // Enclosure of Df_{i1 i0} over N(V_j).
  BlockBounds jac{0, 0, 0};
  double eps_u = 0.0;
  double eps_s = 0.0;

  // eps_u > 0 and 0 < eps_s < 1; dimensions consistent with jac. Throws
  // InvalidArgument otherwise.
  void validate() const;
};

// One rigorous inequality lhs `rel` rhs. For '>' the check is lhs.lo > rhs.hi,
// for '<' it is lhs.hi < rhs.lo, for "<=" it is lhs.hi <= rhs.lo.
struct InequalityCheck {
  Interval lhs;
  char relation = '<';
  bool or_equal = false;
  Interval rhs;
  bool holds = false;
  // Rigorous lower bound of the margin; negative when the check fails.
  double slack = 0.0;
};

InequalityCheck make_less(const Interval& lhs, const Interval& rhs, bool or_equal = false);
InequalityCheck make_greater(const Interval& lhs, const Interval& rhs);

// Base enclosure strictly inside the target window and each fiber enclosure
// inside the closed ball of radius eps_u / eps_s. The returned check compares
// the farthest fiber distance with its radius (the worse of the two fibers),
// and fails outright when the base leaves the window.
InequalityCheck check_zero_image(const ChartTripleInput& t);

// min_norm_lower(A22) - op_norm_upper(A23) > 1 + eps_u.
InequalityCheck check_expansion(const ChartTripleInput& t);

// op_norm_upper(A32) + op_norm_upper(A33) < 1 - eps_s.
InequalityCheck check_contraction(const ChartTripleInput& t);

struct TripleDiagnostics {
  int j = 0;
  int i0 = 0;
  int i1 = 0;
  bool zero_image_ok = false;
  bool expansion_ok = false;
  bool contraction_ok = false;
  double zero_image_slack = 0.0;
  double expansion_lower = 0.0;
  double contraction_upper = 0.0;

  bool passes() const noexcept { return zero_image_ok && expansion_ok && contraction_ok; }
};

struct CoveringVerdict {
  bool holds = false;
  // In the order of the input triples.
  std::vector<TripleDiagnostics> triples;

  std::optional<std::size_t> first_failure() const;
};

// Runs the three checks on every triple. Triples are split across `threads`
// workers; diagnostics keep the input order. Throws InvalidArgument on an
// empty list.
CoveringVerdict check_covering(const std::vector<ChartTripleInput>& triples, unsigned threads = 1);

}  // namespace nhim
