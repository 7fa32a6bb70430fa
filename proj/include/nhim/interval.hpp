// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace nhim {

// Closed real interval [lo, hi] with outward-rounded arithmetic.
//
// Every operation returns an interval containing the exact real result for
// all point operands drawn from its inputs. Endpoints are rounded in the
// outward direction only when the floating-point result is inexact, so
// exactly representable results (sums of small integers, products with
// zero, ...) stay exact.
class Interval {
 public:
  constexpr Interval() noexcept = default;
  // Point interval. Implicit so that formulas can mix doubles and intervals.
  Interval(double value);  // NOLINT(google-explicit-constructor)
  // Throws InvalidArgument when lo > hi or either endpoint is NaN.
  Interval(double lo, double hi);

  // Tightest enclosure of a decimal literal such as "0.68": the text is
  // parsed once rounding down and once rounding up. Throws InvalidArgument on
  // anything that is not a finite decimal number.
  static Interval from_decimal(std::string_view text);
  static Interval hull(const Interval& a, const Interval& b) noexcept;

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  // Midpoint and radius as plain doubles; mid() is not rigorous.
  double mid() const noexcept;
  double rad() const noexcept;
  double width() const noexcept;
  // Upper bound of |x| over the interval, lower bound of |x| over the interval.
  double mag() const noexcept;
  double mig() const noexcept;

  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const noexcept {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }
  bool contains_zero() const noexcept { return contains(0.0); }
  bool overlaps(const Interval& other) const noexcept {
    return lo_ <= other.hi_ && other.lo_ <= hi_;
  }
  bool is_point() const noexcept { return lo_ == hi_; }

  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend bool operator==(const Interval& a, const Interval& b) noexcept {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

 private:
  struct Unchecked {};
  constexpr Interval(double lo, double hi, Unchecked) noexcept : lo_(lo), hi_(hi) {}

  friend Interval operator+(const Interval&, const Interval&);
  friend Interval operator-(const Interval&, const Interval&);
  friend Interval operator-(const Interval&);
  friend Interval operator*(const Interval&, const Interval&);
  friend Interval operator/(const Interval&, const Interval&);
  friend Interval sqr(const Interval&);
  friend Interval sqrt(const Interval&);
  friend Interval abs(const Interval&);
  friend Interval sin(const Interval&);
  friend Interval cos(const Interval&);
  friend Interval pi_interval();

  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
// Throws DomainError when b contains zero.
Interval operator/(const Interval& a, const Interval& b);

Interval sqr(const Interval& a);
// Throws DomainError when a reaches below zero.
Interval sqrt(const Interval& a);
Interval abs(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);

// Machine enclosures of pi and 2*pi.
Interval pi_interval();
Interval two_pi_interval();

// "[lo, hi]" using the shortest round-trip representation of each endpoint.
std::string to_string(const Interval& a);
// Shortest round-trip representation of a double.
std::string format_double(double x);

// Directed rounding of individual operations on doubles; exposed for code that
// needs a single rigorous bound without building intervals.
namespace rounding {
double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_down(double a);
double sqrt_up(double a);
}  // namespace rounding

}  // namespace nhim
