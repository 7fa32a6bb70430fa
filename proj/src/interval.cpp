// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "nhim/interval.hpp"

#include <algorithm>
#include <cerrno>
#include <cfenv>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "nhim/error.hpp"

namespace nhim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMax = std::numeric_limits<double>::max();
// Below this magnitude an FMA residual may be hit by underflow and is no
// longer guaranteed exact; results that small are nudged instead.
constexpr double kTiny = 0x1p-960;
// libm sin/cos are faithful but not guaranteed correctly rounded.
constexpr int kTrigUlps = 2;

struct Bounds {
  double lo;
  double hi;
};

double next_down(double x) { return std::nextafter(x, -kInf); }
double next_up(double x) { return std::nextafter(x, kInf); }

// The exact value is r + e for some e whose sign is given.
Bounds from_residual(double r, double e) {
  return {e < 0 ? next_down(r) : r, e > 0 ? next_up(r) : r};
}

Bounds nudge(double r) { return {next_down(r), next_up(r)}; }

Bounds overflowed(double r) { return r > 0 ? Bounds{kMax, kInf} : Bounds{-kInf, -kMax}; }

Bounds add_bounds(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) {
    if (std::isfinite(a) && std::isfinite(b)) return overflowed(s);
    return {s, s};
  }
  // TwoSum: a + b == s + e exactly.
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return from_residual(s, e);
}

Bounds mul_bounds(double a, double b) {
  if (a == 0.0 || b == 0.0) return {0.0, 0.0};
  const double p = a * b;
  if (!std::isfinite(p)) {
    if (std::isfinite(a) && std::isfinite(b)) return overflowed(p);
    return {p, p};
  }
  if (std::fabs(p) < kTiny) return nudge(p);
  return from_residual(p, std::fma(a, b, -p));
}

Bounds div_bounds(double a, double b) {
  if (a == 0.0) return {0.0, 0.0};
  const double q = a / b;
  if (!std::isfinite(q)) {
    if (std::isfinite(a)) return overflowed(q);
    return {q, q};
  }
  if (std::isinf(b)) return {q, q};
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return nudge(q);
  // a - q*b is exact; sign(a/b - q) = sign(remainder) * sign(b).
  const double rem = std::fma(-q, b, a);
  return from_residual(q, b > 0 ? rem : -rem);
}

Bounds sqrt_bounds(double a) {
  if (a == 0.0) return {0.0, 0.0};
  const double q = std::sqrt(a);
  if (std::isinf(q)) return {q, q};
  if (a < kTiny) return {std::max(0.0, next_down(q)), next_up(q)};
  return from_residual(q, std::fma(-q, q, a));
}

double step_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = next_down(x);
  return x;
}

double step_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = next_up(x);
  return x;
}

bool is_even(double k) { return std::fmod(k, 2.0) == 0.0; }

// Shared enclosure for sin and cos. Extrema of cos sit at k*pi, those of sin
// at (k + 1/2)*pi; in both cases the value there is (-1)^k.
Interval trig_enclosure(const Interval& x, bool cosine) {
  const Interval full(-1.0, 1.0);
  if (!std::isfinite(x.lo()) || !std::isfinite(x.hi())) return full;
  if (x.lo() == 0.0 && x.hi() == 0.0) return Interval(cosine ? 1.0 : 0.0);
  if (std::max(std::fabs(x.lo()), std::fabs(x.hi())) > 0x1p50) return full;
  const Interval pi = pi_interval();
  if (rounding::sub_up(x.hi(), x.lo()) >= 2.0 * pi.lo()) return full;

  const double f_lo = cosine ? std::cos(x.lo()) : std::sin(x.lo());
  const double f_hi = cosine ? std::cos(x.hi()) : std::sin(x.hi());
  double lo = step_down(std::min(f_lo, f_hi), kTrigUlps);
  double hi = step_up(std::max(f_lo, f_hi), kTrigUlps);

  const double offset = cosine ? 0.0 : 0.5;
  const double k_first = std::floor(x.lo() / pi.mid()) - 2.0;
  const double k_last = std::ceil(x.hi() / pi.mid()) + 2.0;
  for (double k = k_first; k <= k_last; k += 1.0) {
    const Interval critical = Interval(k + offset) * pi;
    if (!critical.overlaps(x)) continue;
    if (is_even(k)) {
      hi = 1.0;
    } else {
      lo = -1.0;
    }
  }
  return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

}  // namespace

namespace rounding {
double add_down(double a, double b) { return add_bounds(a, b).lo; }
double add_up(double a, double b) { return add_bounds(a, b).hi; }
double sub_down(double a, double b) { return add_bounds(a, -b).lo; }
double sub_up(double a, double b) { return add_bounds(a, -b).hi; }
double mul_down(double a, double b) { return mul_bounds(a, b).lo; }
double mul_up(double a, double b) { return mul_bounds(a, b).hi; }
double div_down(double a, double b) { return div_bounds(a, b).lo; }
double div_up(double a, double b) { return div_bounds(a, b).hi; }
double sqrt_down(double a) { return sqrt_bounds(a).lo; }
double sqrt_up(double a) { return sqrt_bounds(a).hi; }
}  // namespace rounding

Interval::Interval(double value) : lo_(value), hi_(value) {
  if (std::isnan(value)) throw InvalidArgument("interval endpoint is NaN");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw InvalidArgument("interval endpoint is NaN");
  if (lo > hi) {
    throw InvalidArgument("interval lower endpoint " + format_double(lo) +
                          " exceeds upper endpoint " + format_double(hi));
  }
}

Interval Interval::from_decimal(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw InvalidArgument("empty number");
  const std::string s(text.substr(first, last - first + 1));
  if (s.find_first_not_of("+-0123456789.eE") != std::string::npos) {
    throw InvalidArgument("not a decimal number: '" + s + "'");
  }

  const int saved = std::fegetround();
  auto parse = [&s](int mode) {
    std::fesetround(mode);
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(s.c_str(), &end);
    const bool ok = end == s.c_str() + s.size() && errno != ERANGE && std::isfinite(value);
    return std::pair{value, ok};
  };
  const auto [down, ok_down] = parse(FE_DOWNWARD);
  const auto [up, ok_up] = parse(FE_UPWARD);
  std::fesetround(saved);
  if (!ok_down || !ok_up) throw InvalidArgument("not a finite decimal number: '" + s + "'");
  return Interval(down, up);
}

Interval Interval::hull(const Interval& a, const Interval& b) noexcept {
  return Interval(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_), Unchecked{});
}

double Interval::mid() const noexcept {
  if (lo_ == hi_) return lo_;
  return 0.5 * lo_ + 0.5 * hi_;
}

double Interval::rad() const noexcept {
  const double m = mid();
  return std::max(rounding::sub_up(m, lo_), rounding::sub_up(hi_, m));
}

double Interval::width() const noexcept { return rounding::sub_up(hi_, lo_); }

double Interval::mag() const noexcept { return std::max(std::fabs(lo_), std::fabs(hi_)); }

double Interval::mig() const noexcept {
  if (contains_zero()) return 0.0;
  return std::min(std::fabs(lo_), std::fabs(hi_));
}

Interval& Interval::operator+=(const Interval& rhs) { return *this = *this + rhs; }
Interval& Interval::operator-=(const Interval& rhs) { return *this = *this - rhs; }
Interval& Interval::operator*=(const Interval& rhs) { return *this = *this * rhs; }
Interval& Interval::operator/=(const Interval& rhs) { return *this = *this / rhs; }

Interval operator+(const Interval& a, const Interval& b) {
  return Interval(add_bounds(a.lo_, b.lo_).lo, add_bounds(a.hi_, b.hi_).hi, Interval::Unchecked{});
}

Interval operator-(const Interval& a, const Interval& b) {
  return Interval(add_bounds(a.lo_, -b.hi_).lo, add_bounds(a.hi_, -b.lo_).hi,
                  Interval::Unchecked{});
}

Interval operator-(const Interval& a) { return Interval(-a.hi_, -a.lo_, Interval::Unchecked{}); }

Interval operator*(const Interval& a, const Interval& b) {
  const Bounds c[4] = {mul_bounds(a.lo_, b.lo_), mul_bounds(a.lo_, b.hi_),
                       mul_bounds(a.hi_, b.lo_), mul_bounds(a.hi_, b.hi_)};
  double lo = c[0].lo;
  double hi = c[0].hi;
  for (const auto& x : c) {
    lo = std::min(lo, x.lo);
    hi = std::max(hi, x.hi);
  }
  return Interval(lo, hi, Interval::Unchecked{});
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) {
    throw DomainError("interval division by " + to_string(b) + ", which contains zero");
  }
  const Bounds c[4] = {div_bounds(a.lo_, b.lo_), div_bounds(a.lo_, b.hi_),
                       div_bounds(a.hi_, b.lo_), div_bounds(a.hi_, b.hi_)};
  double lo = c[0].lo;
  double hi = c[0].hi;
  for (const auto& x : c) {
    lo = std::min(lo, x.lo);
    hi = std::max(hi, x.hi);
  }
  return Interval(lo, hi, Interval::Unchecked{});
}

Interval sqr(const Interval& a) {
  if (a.lo_ >= 0.0) {
    return Interval(mul_bounds(a.lo_, a.lo_).lo, mul_bounds(a.hi_, a.hi_).hi, Interval::Unchecked{});
  }
  if (a.hi_ <= 0.0) {
    return Interval(mul_bounds(a.hi_, a.hi_).lo, mul_bounds(a.lo_, a.lo_).hi, Interval::Unchecked{});
  }
  const double m = a.mag();
  return Interval(0.0, mul_bounds(m, m).hi, Interval::Unchecked{});
}

Interval sqrt(const Interval& a) {
  if (a.lo_ < 0.0) {
    throw DomainError("square root of " + to_string(a) + ", which reaches below zero");
  }
  return Interval(sqrt_bounds(a.lo_).lo, sqrt_bounds(a.hi_).hi, Interval::Unchecked{});
}

Interval abs(const Interval& a) {
  if (a.lo_ >= 0.0) return a;
  if (a.hi_ <= 0.0) return -a;
  return Interval(0.0, a.mag(), Interval::Unchecked{});
}

Interval sin(const Interval& a) { return trig_enclosure(a, false); }
Interval cos(const Interval& a) { return trig_enclosure(a, true); }

Interval pi_interval() {
  // 0x1.921fb54442d18p+1 is the double nearest pi and lies below it.
  constexpr double kPiLo = 0x1.921fb54442d18p+1;
  return Interval(kPiLo, std::nextafter(kPiLo, kInf), Interval::Unchecked{});
}

Interval two_pi_interval() { return Interval(2.0) * pi_interval(); }

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string to_string(const Interval& a) {
  return "[" + format_double(a.lo()) + ", " + format_double(a.hi()) + "]";
}

}  // namespace nhim
