// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nhim/cone.hpp"
#include "nhim/covering.hpp"
#include "nhim/interval.hpp"
#include "nhim/interval_matrix.hpp"

namespace nhim {

// Fractional part of the golden mean, (sqrt(5) - 1) / 2.
Interval golden_mean_fraction();

// Rotating Henon map on T^1 x R^2,
//   theta' = theta + omega (mod 1)
//   x'     = 1 + y - a x^2 + epsilon cos(2 pi theta)
//   y'     = b x,
// together with the frame rescalings tau, eta and the circumference v of the
// base circle Lambda = R/v used by the atlas. Every real parameter is an
// interval so decimal inputs are enclosed exactly.
struct HenonParams {
  Interval a = Interval::from_decimal("0.68");
  Interval b = Interval::from_decimal("0.1");
  Interval omega = golden_mean_fraction();
  Interval epsilon = Interval(0.5);
  Interval tau = Interval(3.0);
  Interval eta = Interval::from_decimal("0.075");
  // Atlas circumference; 0 lets the verifier choose it.
  int v = 0;

  // Throws InvalidArgument unless a != 0, b != 0, (1-b)^2 + 4a > 0,
  // tau > 0, eta > 0, epsilon >= 0 and v is 0 or >= 9.
  void validate() const;
};

// Fixed point (x-, y-) of the unperturbed map on the branch with the negative
// square root. Throws DomainError if the discriminant may be <= 0 and
// InvalidArgument if a contains zero.
std::pair<Interval, Interval> fixed_point(const HenonParams& p);

// Eigen-data at (x-, y-) and the frames
//   Phi_eps     = (1/eps) [[-lambda1/tau, -1/tau], [lambda2/eta, 1/eta]]
//   Phi_eps^-1  = eps kappa [[tau, eta], [-tau lambda2, -lambda1 eta]]
// with kappa = 1/(lambda2 - lambda1), so that Phi DF(x-,y-) Phi^-1 = diag(lambda1, lambda2).
// At epsilon = 0 the frames are stored at unit scale (conjugation does not
// depend on the scale).
struct JordanFrame {
  Interval x_minus;
  Interval y_minus;
  Interval lambda1;
  Interval lambda2;
  Interval kappa;
  Interval scale;
  IntervalMatrix phi;
  IntervalMatrix phi_inv;
};

// Throws DomainError when the eigenvalues cannot be separated.
JordanFrame eigen_data(const HenonParams& p);

// DF(x, y) = [[-2 a x, 1], [b, 0]].
IntervalMatrix henon_jacobian(const HenonParams& p, const Interval& x);

// Fiber (2x2) enclosures of the map in the local frame over the unit box
// |x~|, |y~| <= 1. "direct" evaluates J + R_eps from the perturbation formula;
// "printed" is the coarser closed-form enclosure with the constants 1/2,
// 6/1000 (forward) and 6/10, 50 (backward).
IntervalMatrix forward_fiber_direct(const HenonParams& p, const JordanFrame& f);
IntervalMatrix forward_fiber_printed(const HenonParams& p, const JordanFrame& f);
IntervalMatrix backward_fiber_direct(const HenonParams& p, const JordanFrame& f);
IntervalMatrix backward_fiber_printed(const HenonParams& p, const JordanFrame& f);

enum class EnclosureSource { printed, direct };

// Full 3x3 enclosure of the derivative of the map in phi-coordinates over
// N(Lambda), in native order (theta, x~, y~). The base row is (1, 0, 0); the
// base column carries the coupling from the forcing term, of size
// 2 pi |lambda1| / (v tau) and 2 pi |lambda2| / (v eta) forward and
// 2 pi / (v tau), 2 pi / (v eta) backward. Requires p.v >= 9.
BlockBounds forward_jac_enclosure(const HenonParams& p, EnclosureSource source = EnclosureSource::direct);
BlockBounds backward_jac_enclosure(const HenonParams& p, EnclosureSource source = EnclosureSource::direct);

// Cone-condition bounds read off the enclosures. The backward ones use the
// inverse map with the unstable and stable roles exchanged.
DerivativeBounds assemble_forward_bounds(const HenonParams& p, EnclosureSource source = EnclosureSource::printed);
DerivativeBounds assemble_backward_bounds(const HenonParams& p, EnclosureSource source = EnclosureSource::printed);

enum class Direction { forward, backward };

// Chart triples (j, i0, i1) for every V_j inside U_{i0} with the rigorous
// zero-section image and the given derivative enclosure (already in
// unstable/stable role order). Requires p.v >= 9.
std::vector<ChartTripleInput> henon_chart_triples(const HenonParams& p, Direction dir, const BlockBounds& jac);

struct InequalityRecord {
  std::string name;
  InequalityCheck check;
  // Where the worst case occurred, e.g. the chart triple.
  std::string detail;
};

struct VerifyOptions {
  bool covering = true;
  bool cones = true;
  EnclosureSource source = EnclosureSource::printed;
  unsigned threads = 1;
};

struct HenonVerification {
  int v = 0;
  std::vector<InequalityRecord> records;

  bool certified() const;
  // Name of the first failing record, if any.
  std::optional<std::string> first_failure() const;
};

// Smallest v = 2^k, k >= 10, at which the cone conditions for the given
// direction hold with slack at least 1e-6 (capped at 2^30).
int select_v(const HenonParams& p, double m, Direction dir, EnclosureSource source = EnclosureSource::printed);

// Covering relation and cone conditions for F_eps (forward) or F_eps^-1
// (backward) with expansion rate m. Uses p.v when set, otherwise select_v.
// Throws InvalidArgument if m <= 1.
HenonVerification verify_forward(const HenonParams& p, double m, const VerifyOptions& opts = {});
HenonVerification verify_backward(const HenonParams& p, double m, const VerifyOptions& opts = {});

struct RegionBox {
  Interval theta;
  Interval x;
  Interval y;
};

struct RegionReport {
  // Enclosure of |D| = phi^-1(N(Lambda)) and the target neighbourhood U_eps.
  RegionBox d_box;
  RegionBox u_box;
  // Half-widths of |D| against 1.1 eps and 0.12 eps.
  InequalityCheck x_check;
  InequalityCheck y_check;

  bool contained() const noexcept { return x_check.holds && y_check.holds; }
};

RegionReport region_bound(const HenonParams& p);

// Forward + backward + region verification on a common atlas.
struct FullOptions {
  bool covering = true;
  bool cones = true;
  bool region = true;
  bool forward = true;
  bool backward = true;
  EnclosureSource source = EnclosureSource::printed;
  unsigned threads = 1;
};

HenonVerification verify_henon(const HenonParams& p, double m_forward, double m_backward,
                               const FullOptions& opts = {});

struct ScanResult {
  double epsilon_max = 0.0;
  // Smallest grid point found to fail; absent when the upper limit certifies.
  std::optional<double> first_failure;
  int evaluations = 0;
};

// Largest epsilon on the grid k * 2^-20 (up to `upper_limit`) for which
// verify_henon certifies, by bisection; all bounds grow with epsilon.
// Throws DomainError if nothing certifies even at epsilon = 0.
ScanResult max_certified_epsilon(const HenonParams& p, double m_forward, double m_backward,
                                 const FullOptions& opts = {}, double upper_limit = 16.0);

// Point evaluation of the map and its inverse (midpoints of the parameters).
struct Point3 {
  double theta;
  double x;
  double y;
};
Point3 henon_forward(const HenonParams& p, const Point3& q);
Point3 henon_inverse(const HenonParams& p, const Point3& q);

}  // namespace nhim
