// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nhim/atlas.hpp"
#include "nhim/cone.hpp"
#include "nhim/henon.hpp"

namespace nhim::testing {
namespace {

class Mp {
 public:
  explicit Mp(mpfr_prec_t prec = 256) { mpfr_init2(v, prec); }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  mpfr_t v;
};

void eval(Op op, mpfr_t out, double x, double y, mpfr_rnd_t rnd) {
  Mp a, b;
  mpfr_set_d(a.v, x, MPFR_RNDN);
  mpfr_set_d(b.v, y, MPFR_RNDN);
  switch (op) {
    case Op::add: mpfr_add(out, a.v, b.v, rnd); break;
    case Op::sub: mpfr_sub(out, a.v, b.v, rnd); break;
    case Op::mul: mpfr_mul(out, a.v, b.v, rnd); break;
    case Op::div: mpfr_div(out, a.v, b.v, rnd); break;
    case Op::sqrt: mpfr_sqrt(out, a.v, rnd); break;
    case Op::sin: mpfr_sin(out, a.v, rnd); break;
    case Op::cos: mpfr_cos(out, a.v, rnd); break;
  }
}

double pick(const Interval& x, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> which(0, 3);
  switch (which(rng)) {
    case 0: return x.lo();
    case 1: return x.hi();
    default: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      return std::clamp(x.lo() + u(rng) * (x.hi() - x.lo()), x.lo(), x.hi());
    }
  }
}

// Interval with magnitude spread over many binades.
Interval wide_random_interval(std::mt19937_64& rng, bool positive) {
  std::uniform_real_distribution<double> mant(1.0, 2.0);
  std::uniform_int_distribution<int> expo(-20, 20);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> shape(0, 7);
  double a = std::ldexp(mant(rng), expo(rng));
  if (!positive && coin(rng)) a = -a;
  double w = 0.0;
  switch (shape(rng)) {
    case 0: w = 0.0; break;
    case 1: w = std::ldexp(mant(rng), expo(rng) - 40); break;
    default: w = std::fabs(a) * std::uniform_real_distribution<double>(0.0, 1.5)(rng); break;
  }
  if (positive) return Interval(a, a + w);
  return coin(rng) ? Interval(a, a + w) : Interval(a - w, a);
}

}  // namespace

std::string op_name(Op op) {
  switch (op) {
    case Op::add: return "add";
    case Op::sub: return "sub";
    case Op::mul: return "mul";
    case Op::div: return "div";
    case Op::sqrt: return "sqrt";
    case Op::sin: return "sin";
    case Op::cos: return "cos";
  }
  return "?";
}

bool contains_exact(const Interval& r, Op op, double x, double y) {
  Mp down, up;
  eval(op, down.v, x, y, MPFR_RNDD);
  eval(op, up.v, x, y, MPFR_RNDU);
  return mpfr_cmp_d(down.v, r.lo()) >= 0 && mpfr_cmp_d(up.v, r.hi()) <= 0;
}

bool contains_sqrt_expression(const Interval& r, double p, double q, double s, double d) {
  // The value is irrational for non-square s, so 1024 bits decide the
  // comparison with double endpoints.
  Mp t(1024);
  mpfr_set_d(t.v, s, MPFR_RNDN);
  mpfr_sqrt(t.v, t.v, MPFR_RNDN);
  mpfr_mul_d(t.v, t.v, q, MPFR_RNDN);
  mpfr_add_d(t.v, t.v, p, MPFR_RNDN);
  mpfr_div_d(t.v, t.v, d, MPFR_RNDN);
  return mpfr_cmp_d(t.v, r.lo()) >= 0 && mpfr_cmp_d(t.v, r.hi()) <= 0;
}

Interval random_interval(std::mt19937_64& rng, double scale, double max_radius) {
  std::uniform_real_distribution<double> mid(-scale, scale);
  std::uniform_real_distribution<double> rad(0.0, max_radius);
  std::uniform_int_distribution<int> point(0, 7);
  const double m = mid(rng);
  const double r = point(rng) == 0 ? 0.0 : rad(rng);
  return Interval(m - r, m + r);
}

std::vector<double> random_member(const IntervalMatrix& m, std::mt19937_64& rng) {
  std::vector<double> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(pick(m(i, j), rng));
  }
  return out;
}

PropertyResult interval_inclusion_property(long long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> which(0, 6);
  std::uniform_real_distribution<double> angle(-100.0, 100.0);
  std::uniform_real_distribution<double> angle_width(0.0, 8.0);
  PropertyResult res;
  for (long long k = 0; k < samples; ++k) {
    const Op op = static_cast<Op>(which(rng));
    Interval a, b(0.0), r;
    switch (op) {
      case Op::add: a = wide_random_interval(rng, false); b = wide_random_interval(rng, false); r = a + b; break;
      case Op::sub: a = wide_random_interval(rng, false); b = wide_random_interval(rng, false); r = a - b; break;
      case Op::mul: a = wide_random_interval(rng, false); b = wide_random_interval(rng, false); r = a * b; break;
      case Op::div: {
        a = wide_random_interval(rng, false);
        b = wide_random_interval(rng, true);
        if (std::uniform_int_distribution<int>(0, 1)(rng)) b = -b;
        r = a / b;
        break;
      }
      case Op::sqrt: a = wide_random_interval(rng, true); r = sqrt(a); break;
      case Op::sin:
      case Op::cos: {
        const double lo = angle(rng);
        a = Interval(lo, lo + (std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? 0.0 : angle_width(rng)));
        r = op == Op::sin ? sin(a) : cos(a);
        break;
      }
    }
    const double x = pick(a, rng);
    const double y = pick(b, rng);
    ++res.checked;
    if (!contains_exact(r, op, x, y)) {
      if (res.violations++ == 0) {
        std::ostringstream os;
        os << op_name(op) << "(" << format_double(x) << ", " << format_double(y) << ") not in " << to_string(r);
        res.first_violation = os.str();
      }
    }
  }
  return res;
}

PropertyResult abc_sampling_property(int matrices, int vectors, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  PropertyResult res;

  for (int t = 0; t < matrices; ++t) {
    const std::size_t c = dim(rng), u = dim(rng), s = dim(rng);
    const std::size_t n = c + u + s;
    // Dominant unstable diagonal half of the time, so b is positive and the
    // inequality is not trivially satisfied.
    const bool dominant = t % 2 == 0;
    std::vector<Interval> entries(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Interval e = random_interval(rng, 1.0, 0.2);
        if (dominant && i == j && i >= c && i < c + u) e = e + Interval(3.0);
        entries[i * n + j] = e;
      }
    }
    const IntervalMatrix full(n, n, entries);
    const BlockBounds blocks = BlockBounds::from_matrix(full, c, u, s);
    const AbcCoefficients abc = coeffs_abc(blocks);
    const std::vector<double> P = random_member(full, rng);

    for (int k = 0; k < vectors; ++k) {
      std::vector<double> p(n);
      for (auto& x : p) x = gauss(rng);
      // Every fourth vector has whole components zeroed to probe the edges.
      const int mask = k % 4 == 0 ? std::uniform_int_distribution<int>(1, 6)(rng) : 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t part = i < c ? 0 : (i < c + u ? 1 : 2);
        if (mask & (1 << part)) p[i] = 0.0;
      }

      long double qd = 0.0L, rd = 0.0L;
      for (std::size_t i = 0; i < n; ++i) {
        long double row = 0.0L;
        for (std::size_t j = 0; j < n; ++j) row += static_cast<long double>(P[i * n + j]) * p[j];
        const std::size_t part = i < c ? 0 : (i < c + u ? 1 : 2);
        qd += (part == 1 ? 1.0L : -1.0L) * row * row;
        const double coef = part == 0 ? -abc.a : (part == 1 ? abc.b : -abc.c);
        rd += coef * static_cast<long double>(p[i]) * p[i];
      }
      const long double scale = 1.0L + std::fabs(rd) + std::fabs(qd);
      ++res.checked;
      if (qd - rd > 1e-12L * scale) continue;

      // Exact evaluation: every product and sum fits in 2048 bits here.
      Mp qh(2048), rhs(2048), row(2048), tmp(2048);
      mpfr_set_zero(qh.v, 1);
      mpfr_set_zero(rhs.v, 1);
      for (std::size_t i = 0; i < n; ++i) {
        mpfr_set_zero(row.v, 1);
        for (std::size_t j = 0; j < n; ++j) {
          mpfr_set_d(tmp.v, P[i * n + j], MPFR_RNDN);
          mpfr_mul_d(tmp.v, tmp.v, p[j], MPFR_RNDN);
          mpfr_add(row.v, row.v, tmp.v, MPFR_RNDN);
        }
        const std::size_t part = i < c ? 0 : (i < c + u ? 1 : 2);
        mpfr_sqr(row.v, row.v, MPFR_RNDN);
        (part == 1 ? mpfr_add : mpfr_sub)(qh.v, qh.v, row.v, MPFR_RNDN);
        const double coef = part == 0 ? -abc.a : (part == 1 ? abc.b : -abc.c);
        mpfr_set_d(tmp.v, p[i], MPFR_RNDN);
        mpfr_sqr(tmp.v, tmp.v, MPFR_RNDN);
        mpfr_mul_d(tmp.v, tmp.v, coef, MPFR_RNDN);
        mpfr_add(rhs.v, rhs.v, tmp.v, MPFR_RNDN);
      }
      if (mpfr_cmp(qh.v, rhs.v) < 0) {
        if (res.violations++ == 0) {
          res.first_violation = "matrix " + std::to_string(t) + " vector " + std::to_string(k) +
                                " (c,u,s)=(" + std::to_string(c) + "," + std::to_string(u) + "," +
                                std::to_string(s) + ")";
        }
      }
    }
  }
  return res;
}

PropertyResult henon_enclosure_property(int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eps(0.0, 0.5), tau(0.5, 10.0), eta(0.01, 1.0);
  std::uniform_int_distribution<int> v(9, 1 << 20);
  PropertyResult res;
  for (int k = 0; k < draws; ++k) {
    HenonParams p;
    p.epsilon = Interval(k == 0 ? 0.0 : eps(rng));
    p.tau = Interval(tau(rng));
    p.eta = Interval(eta(rng));
    p.v = v(rng);
    const JordanFrame f = eigen_data(p);
    const bool fiber_ok = forward_fiber_printed(p, f).contains(forward_fiber_direct(p, f)) &&
                          backward_fiber_printed(p, f).contains(backward_fiber_direct(p, f));
    const bool full_ok =
        forward_jac_enclosure(p, EnclosureSource::printed)
            .to_matrix()
            .contains(forward_jac_enclosure(p, EnclosureSource::direct).to_matrix()) &&
        backward_jac_enclosure(p, EnclosureSource::printed)
            .to_matrix()
            .contains(backward_jac_enclosure(p, EnclosureSource::direct).to_matrix());
    ++res.checked;
    if (!(fiber_ok && full_ok) && res.violations++ == 0) {
      res.first_violation = "epsilon=" + format_double(p.epsilon.lo()) + " tau=" + format_double(p.tau.lo()) +
                            " eta=" + format_double(p.eta.lo()) + " v=" + std::to_string(p.v);
    }
  }
  return res;
}

PropertyResult atlas_property(int v_min, int v_max) {
  PropertyResult res;
  for (int v = v_min; v <= v_max; ++v) {
    ++res.checked;
    if (!validate_cone_containment(build_atlas(v)) && res.violations++ == 0) {
      res.first_violation = "v=" + std::to_string(v);
    }
  }
  return res;
}

}  // namespace nhim::testing
