// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "nhim/atlas.hpp"

#include <cmath>
#include <string>

#include "nhim/error.hpp"

namespace nhim {
namespace {

// Closed range [lo, hi] (hi - lo < v) strictly inside the open arc.
bool range_in_arc(const CircleAtlas& atlas, double lo, double hi, const Arc& arc) {
  const double shifted = arc.start + atlas.reduce(lo - arc.start);
  return shifted > arc.start && shifted + (hi - lo) < arc.start + arc.length;
}

}  // namespace

CircleAtlas::CircleAtlas(int v, int v_len, int u_len) : v_(v), v_len_(v_len), u_len_(u_len) {
  if (v < kMinCircumference) {
    throw InvalidArgument("atlas circumference v must be >= 9, got " + std::to_string(v));
  }
  if (v_len <= 0 || v_len > u_len || u_len > v) {
    throw InvalidArgument("atlas window lengths must satisfy 0 < V length <= U length <= v");
  }
}

int CircleAtlas::wrap(long long index) const noexcept {
  const long long r = index % v_;
  return static_cast<int>(r < 0 ? r + v_ : r);
}

double CircleAtlas::reduce(double theta) const {
  double r = std::fmod(theta, static_cast<double>(v_));
  if (r < 0.0) r += v_;
  if (r >= v_) r -= v_;
  return r;
}

bool CircleAtlas::in_V(long long j, double theta) const {
  const double t = reduce(theta - wrap(j));
  return t > 0.0 && t < v_len_;
}

bool CircleAtlas::in_U(long long i, double theta) const {
  const double t = reduce(theta - wrap(i));
  return t > 0.0 && t < u_len_;
}

bool CircleAtlas::inscribed(long long j, long long i) const {
  const int offset = wrap(static_cast<long long>(wrap(j)) - wrap(i));
  return offset <= u_len_ - v_len_;
}

std::vector<int> CircleAtlas::charts_containing_V(long long j) const {
  std::vector<int> out;
  for (int d = 0; d <= u_len_ - v_len_; ++d) out.push_back(wrap(j - d));
  return out;
}

double CircleAtlas::eta(long long i, double theta) const {
  const double t = reduce(theta - wrap(i));
  if (!(t > 0.0 && t < u_len_)) {
    throw InvalidArgument("point " + format_double(theta) + " is outside window U_" + std::to_string(wrap(i)));
  }
  return wrap(i) + t;
}

double CircleAtlas::eta_inverse(long long i, double x) const {
  const int base = wrap(i);
  if (!(x > base && x < base + u_len_)) {
    throw InvalidArgument("chart coordinate " + format_double(x) + " is outside eta_" + std::to_string(base) +
                          "(U_" + std::to_string(base) + ")");
  }
  return reduce(x);
}

double CircleAtlas::transition(long long from, long long to, double x) const {
  return eta(to, eta_inverse(from, x));
}

Interval CircleAtlas::in_chart(long long i, const Interval& range) const {
  const double base = wrap(i);
  const double turns = std::floor((range.lo() - base) / v_);
  return range - Interval(turns) * Interval(static_cast<double>(v_));
}

CircleAtlas build_atlas(int v) { return CircleAtlas(v); }

ConePairing cone_pair_for(const CircleAtlas& atlas, double theta) {
  const long long i = static_cast<long long>(std::floor(atlas.reduce(theta)));
  return {atlas.wrap(i - 2), atlas.wrap(i - 4)};
}

bool validate_cone_containment(const CircleAtlas& atlas, double shadow_radius) {
  const int v = atlas.v();
  constexpr int kSteps = 8;
  const int n = v * kSteps;

  for (int k = 0; k < n; ++k) {
    const double theta = static_cast<double>(k) / kSteps;
    bool covered = false;
    for (int j = 0; j < v && !covered; ++j) covered = atlas.in_V(j, theta);
    if (!covered) return false;
  }

  // Every V_j must fit in some U_i.
  for (int j = 0; j < v; ++j) {
    bool fits = false;
    for (int i = 0; i < v && !fits; ++i) fits = atlas.inscribed(j, i);
    if (!fits) return false;
  }

  for (int k = 0; k < n; ++k) {
    const double theta = static_cast<double>(k) / kSteps;
    // An integer theta lies in [i-1, i] and in [i, i+1]; both pairings must work.
    std::vector<long long> cells{static_cast<long long>(std::floor(theta))};
    if (k % kSteps == 0) cells.push_back(cells.front() - 1);

    for (long long cell : cells) {
      const Arc V = atlas.V(cell - 2);
      const Arc U = atlas.U(cell - 4);
      if (!atlas.inscribed(V.start, U.start)) return false;
      // Cone enclosing pair: the closed shadow at theta sits inside V.
      if (!range_in_arc(atlas, theta - shadow_radius, theta + shadow_radius, V)) return false;

      // Cones chart pair: every point over the closure of V has its shadow
      // inside some V_k that is itself inside U.
      for (int t = 0; t <= V.length * kSteps; ++t) {
        const double q = V.start + static_cast<double>(t) / kSteps;
        bool found = false;
        for (int d = 0; d <= U.length - V.length && !found; ++d) {
          const Arc Vk = atlas.V(static_cast<long long>(U.start) + d);
          found = range_in_arc(atlas, q - shadow_radius, q + shadow_radius, Vk);
        }
        if (!found) return false;
      }
    }
  }
  return true;
}

}  // namespace nhim
