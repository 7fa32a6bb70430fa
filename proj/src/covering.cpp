// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "nhim/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "nhim/error.hpp"

namespace nhim {
namespace {

// Upper bound of the Euclidean norm over a box.
Interval box_norm(const std::vector<Interval>& box) {
  if (box.size() == 1) return Interval(box.front().mag());
  Interval sum(0.0);
  for (const auto& x : box) sum += sqr(Interval(x.mag()));
  return Interval(rounding::sqrt_up(sum.hi()));
}

// Smallest distance from the base enclosure to the boundary of the open
// window; positive iff the enclosure is strictly inside.
double base_margin(const std::vector<Interval>& base, const std::vector<Interval>& window) {
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < base.size(); ++k) {
    margin = std::min({margin, rounding::sub_down(base[k].lo(), window[k].lo()),
                       rounding::sub_down(window[k].hi(), base[k].hi())});
  }
  return margin;
}

TripleDiagnostics diagnose(const ChartTripleInput& t) {
  TripleDiagnostics d;
  d.j = t.j;
  d.i0 = t.i0;
  d.i1 = t.i1;
  const auto z = check_zero_image(t);
  const auto e = check_expansion(t);
  const auto c = check_contraction(t);
  d.zero_image_ok = z.holds;
  d.zero_image_slack = z.slack;
  d.expansion_ok = e.holds;
  d.expansion_lower = e.lhs.lo();
  d.contraction_ok = c.holds;
  d.contraction_upper = c.lhs.hi();
  return d;
}

}  // namespace

void ChartTripleInput::validate() const {
  if (!(eps_u > 0.0) || !std::isfinite(eps_u)) {
    throw InvalidArgument("eps_u must be finite and > 0, got " + format_double(eps_u));
  }
  if (!(eps_s > 0.0 && eps_s < 1.0)) {
    throw InvalidArgument("eps_s must lie in (0, 1), got " + format_double(eps_s));
  }
  if (zero_base.size() != jac.c() || target_window.size() != jac.c() || zero_u.size() != jac.u() ||
      zero_s.size() != jac.s()) {
    throw InvalidArgument("zero-section image dimensions do not match the derivative block layout");
  }
}

InequalityCheck make_less(const Interval& lhs, const Interval& rhs, bool or_equal) {
  InequalityCheck c{lhs, '<', or_equal, rhs};
  c.holds = or_equal ? lhs.hi() <= rhs.lo() : lhs.hi() < rhs.lo();
  c.slack = rounding::sub_down(rhs.lo(), lhs.hi());
  return c;
}

InequalityCheck make_greater(const Interval& lhs, const Interval& rhs) {
  InequalityCheck c{lhs, '>', false, rhs};
  c.holds = lhs.lo() > rhs.hi();
  c.slack = rounding::sub_down(lhs.lo(), rhs.hi());
  return c;
}

InequalityCheck check_zero_image(const ChartTripleInput& t) {
  t.validate();
  const auto u = make_less(box_norm(t.zero_u), Interval(t.eps_u), true);
  const auto s = make_less(box_norm(t.zero_s), Interval(t.eps_s), true);
  InequalityCheck worst = u.slack <= s.slack ? u : s;
  worst.holds = u.holds && s.holds;
  const double base = base_margin(t.zero_base, t.target_window);
  if (!(base > 0.0)) worst.holds = false;
  worst.slack = std::min(worst.slack, base);
  return worst;
}

InequalityCheck check_expansion(const ChartTripleInput& t) {
  t.validate();
  // The argument (0, x, y) removes the A21 column.
  const Interval lower = Interval(min_norm_lower(t.jac.block(1, 1))) - Interval(op_norm_upper(t.jac.block(1, 2)));
  return make_greater(Interval(lower.lo()), Interval(1.0) + Interval(t.eps_u));
}

InequalityCheck check_contraction(const ChartTripleInput& t) {
  t.validate();
  const Interval upper = Interval(op_norm_upper(t.jac.block(2, 1))) + Interval(op_norm_upper(t.jac.block(2, 2)));
  return make_less(Interval(upper.hi()), Interval(1.0) - Interval(t.eps_s));
}

std::optional<std::size_t> CoveringVerdict::first_failure() const {
  for (std::size_t k = 0; k < triples.size(); ++k) {
    if (!triples[k].passes()) return k;
  }
  return std::nullopt;
}

CoveringVerdict check_covering(const std::vector<ChartTripleInput>& triples, unsigned threads) {
  if (triples.empty()) throw InvalidArgument("covering check needs at least one chart triple");
  for (const auto& t : triples) t.validate();

  CoveringVerdict verdict;
  verdict.triples.resize(triples.size());
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, triples.size());
  if (workers == 1) {
    for (std::size_t k = 0; k < triples.size(); ++k) verdict.triples[k] = diagnose(triples[k]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < triples.size(); k += workers) verdict.triples[k] = diagnose(triples[k]);
      });
    }
    for (auto& th : pool) th.join();
  }
  verdict.holds = std::all_of(verdict.triples.begin(), verdict.triples.end(),
                              [](const TripleDiagnostics& d) { return d.passes(); });
  return verdict;
}

}  // namespace nhim
