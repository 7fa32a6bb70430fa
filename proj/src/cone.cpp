// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "nhim/cone.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nhim/error.hpp"

namespace nhim {
namespace {

void require_rate(double m) {
  if (!(m > 1.0) || !std::isfinite(m)) {
    throw InvalidArgument("cone expansion rate m must be a finite number > 1, got " + format_double(m));
  }
}

ConeVerdict make_verdict(double m, const std::array<Interval, 3>& lhs) {
  ConeVerdict v;
  v.m = m;
  v.lhs = lhs;
  v.slack[0] = rounding::sub_down(m, lhs[0].hi());
  v.slack[1] = rounding::sub_down(lhs[1].lo(), m);
  v.slack[2] = rounding::sub_down(m, lhs[2].hi());
  v.holds = lhs[0].hi() < m && lhs[1].lo() > m && lhs[2].hi() < m;
  v.margin = std::min({v.slack[0], v.slack[1], v.slack[2]});
  return v;
}

}  // namespace

void DerivativeBounds::validate() const {
  const std::array<std::pair<const char*, double>, 9> fields{{{"C", C},
                                                              {"eps_c", eps_c},
                                                              {"mu", mu},
                                                              {"M", M},
                                                              {"A_up", A_up},
                                                              {"alpha", alpha},
                                                              {"eps_u", eps_u},
                                                              {"eps_s", eps_s},
                                                              {"beta", beta}}};
  for (const auto& [name, value] : fields) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw InvalidArgument(std::string("derivative bound ") + name + " must be finite and >= 0, got " +
                            format_double(value));
    }
  }
  if (alpha > A_up) {
    throw InvalidArgument("derivative bounds inconsistent: alpha " + format_double(alpha) + " > A_up " +
                          format_double(A_up));
  }
  if (mu > M) {
    throw InvalidArgument("derivative bounds inconsistent: mu " + format_double(mu) + " > M " + format_double(M));
  }
}

DerivativeBounds DerivativeBounds::from_blocks(const BlockBounds& blocks) {
  auto up = [&](std::size_t k, std::size_t l) { return op_norm_upper(blocks.block(k, l)); };
  DerivativeBounds b;
  b.C = up(0, 0);
  b.eps_c = std::max(up(0, 1), up(0, 2));
  b.mu = min_norm_lower(blocks.block(1, 0));
  b.M = std::max(up(1, 0), up(2, 0));
  b.A_up = up(1, 1);
  b.alpha = min_norm_lower(blocks.block(1, 1));
  b.eps_u = up(1, 2);
  b.eps_s = up(2, 1);
  b.beta = up(2, 2);
  return b;
}

AbcCoefficients coeffs_abc(const BlockBounds& blocks) {
  Interval n[3][3];
  Interval nm[3][3];
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = 0; l < 3; ++l) {
      n[k][l] = Interval(op_norm_upper(blocks.block(k, l)));
      nm[k][l] = Interval(min_norm_lower(blocks.block(k, l)));
    }
  }
  // Column-l coefficient: off-diagonal rows enter through the operator norm,
  // the unstable row through the minimum norm, plus the cross terms of
  // column l with the other two columns in every row.
  auto cross = [&](std::size_t l) {
    Interval sum(0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      Interval others(0.0);
      for (std::size_t j = 0; j < 3; ++j) {
        if (j != l) others += n[i][j];
      }
      sum += n[i][l] * others;
    }
    return sum;
  };
  const Interval a = sqr(n[0][0]) - sqr(nm[1][0]) + sqr(n[2][0]) + cross(0);
  const Interval b = -sqr(n[0][1]) + sqr(nm[1][1]) - sqr(n[2][1]) - cross(1);
  const Interval c = sqr(n[0][2]) - sqr(nm[1][2]) + sqr(n[2][2]) + cross(2);
  return {a.hi(), b.lo(), c.hi()};
}

ConeVerdict check_cone_conditions(const DerivativeBounds& b, double m) {
  require_rate(m);
  b.validate();
  const Interval C(b.C), ec(b.eps_c), mu(b.mu), M(b.M), A(b.A_up), al(b.alpha), eu(b.eps_u), es(b.eps_s),
      be(b.beta);

  const Interval lhs1 = sqr(C) - sqr(mu) + sqr(M) + Interval(2.0) * C * ec + M * (A + eu + es + be);
  const Interval lhs2 = -sqr(ec) + sqr(al) - sqr(es) - ec * (C + ec) - A * (M + eu) - es * (M + be);
  const Interval lhs3 = sqr(ec) + sqr(be) + ec * (C + ec) + eu * (M + A) + be * (M + es);
  return make_verdict(m, {lhs1, lhs2, lhs3});
}

ConeVerdict check_cone_conditions_rescaled(const DerivativeBounds& b, double m, double v) {
  require_rate(m);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument("rescaling factor v must be a finite number > 0, got " + format_double(v));
  }
  b.validate();
  const Interval C(b.C), A(b.A_up), al(b.alpha), eu(b.eps_u), es(b.eps_s), be(b.beta);
  const Interval vi(v);
  const Interval mu_v = Interval(b.mu) / vi;
  const Interval M_v = Interval(b.M) / vi;
  const Interval v_ec = vi * Interval(b.eps_c);

  const Interval lhs1 = sqr(C) - sqr(mu_v) + sqr(M_v) + Interval(2.0) * C * v_ec + M_v * (A + eu + es + be);
  const Interval lhs2 = -sqr(v_ec) + sqr(al) - sqr(es) - v_ec * (C + v_ec) - A * (M_v + eu) - es * (M_v + be);
  const Interval lhs3 = sqr(v_ec) + sqr(be) + v_ec * (C + v_ec) + eu * (M_v + A) + be * (M_v + es);
  ConeVerdict verdict = make_verdict(m, {lhs1, lhs2, lhs3});
  verdict.rescale_v = v;
  return verdict;
}

std::optional<double> suggest_v(const DerivativeBounds& b, double m) {
  for (int k = 0; k <= 64; ++k) {
    const double v = std::ldexp(1.0, k);
    if (check_cone_conditions_rescaled(b, m, v).holds) return v;
  }
  return std::nullopt;
}

}  // namespace nhim
