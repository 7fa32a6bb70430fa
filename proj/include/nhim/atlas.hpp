// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "nhim/interval.hpp"

namespace nhim {

// Open arc (start, start + length) on the circle R/v, expressed in the chart
// coordinate of its own window (start may exceed v).
struct Arc {
  int start = 0;
  int length = 0;
};

// Good atlas on the circle Lambda = R/v:
//   V_j = j + (0, v_len) mod v,   U_i = i + (0, u_len) mod v,
//   eta_i(i + x mod v) = i + x   for x in (0, u_len).
// Indices are taken mod v, so i = v and i = 0 name the same window.
class CircleAtlas {
 public:
  static constexpr int kMinCircumference = 9;

  // v >= 9 (throws InvalidArgument otherwise). The window lengths default to
  // 5 and 9; other lengths exist so validation can be exercised on atlases
  // that do not work. Requires 0 < v_len <= u_len <= v.
  explicit CircleAtlas(int v, int v_len = 5, int u_len = 9);

  int v() const noexcept { return v_; }
  int v_len() const noexcept { return v_len_; }
  int u_len() const noexcept { return u_len_; }

  int wrap(long long index) const noexcept;
  // Representative of theta in [0, v).
  double reduce(double theta) const;

  Arc V(long long j) const { return {wrap(j), v_len_}; }
  Arc U(long long i) const { return {wrap(i), u_len_}; }

  bool in_V(long long j, double theta) const;
  bool in_U(long long i, double theta) const;
  // V_j is contained in U_i.
  bool inscribed(long long j, long long i) const;
  // Indices i with V_j inside U_i.
  std::vector<int> charts_containing_V(long long j) const;

  // eta_i and its inverse. eta(i, theta) throws InvalidArgument when theta is
  // not in U_i; eta_inverse returns the point of R/v in [0, v).
  double eta(long long i, double theta) const;
  double eta_inverse(long long i, double x) const;

  // eta_{to} o eta_{from}^{-1}. Throws InvalidArgument when x is outside
  // eta_from(U_from) or its image falls outside U_to.
  double transition(long long from, long long to, double x) const;

  // Chart coordinates of a closed range [lo, hi] of R/v seen from window i:
  // the shift by a multiple of v that puts lo at or just above i. Works on
  // intervals so that rigorous image enclosures can be re-expressed.
  Interval in_chart(long long i, const Interval& range) const;

 private:
  int v_;
  int v_len_;
  int u_len_;
};

// Returns the atlas with the default 5/9 windows. Throws InvalidArgument for
// v < 9.
CircleAtlas build_atlas(int v);

// (V_{i-2}, U_{i-4}) for base point theta with theta in [i, i+1] mod v.
struct ConePairing {
  int j = 0;
  int i = 0;
};
ConePairing cone_pair_for(const CircleAtlas& atlas, double theta);

// Checks, for unit quadratic forms whose cones have base shadow
// [theta - r, theta + r] (r = shadow_radius), that every base point has a cone
// enclosing pair and that the returned pair is a cones chart pair. Base points
// are taken on a grid of step 1/8 over the circle; with integer window
// endpoints and shadow radius the conditions are piecewise constant between
// grid points, so the grid is exhaustive. Also checks that the V windows
// cover the circle and are inscribed in the U windows.
bool validate_cone_containment(const CircleAtlas& atlas, double shadow_radius = 1.0);

}  // namespace nhim
