// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "nhim/henon.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "nhim/atlas.hpp"
#include "nhim/error.hpp"

namespace nhim {
namespace {

constexpr int kFirstV = 1 << 10;
constexpr int kMaxV = 1 << 30;
// Above this circumference the chart triples are replaced by one triple that
// covers every j at once (the enclosure does not depend on j).
constexpr int kMaxEnumeratedV = 1 << 14;
constexpr double kConeSlack = 1e-6;

const Interval kUnit(-1.0, 1.0);

bool eps_is_zero(const HenonParams& p) { return p.epsilon.hi() == 0.0; }

void require_v(const HenonParams& p) {
  if (p.v < CircleAtlas::kMinCircumference) {
    throw InvalidArgument("atlas circumference v must be set to a value >= 9, got " + std::to_string(p.v));
  }
}

void require_rate(double m) {
  if (!(m > 1.0) || !std::isfinite(m)) {
    throw InvalidArgument("expansion rate m must be a finite number > 1, got " + format_double(m));
  }
}

IntervalMatrix mat2(const Interval& a, const Interval& b, const Interval& c, const Interval& d) {
  return IntervalMatrix(2, 2, {a, b, c, d});
}

// Perturbation R_eps of the forward fiber block over the unit box.
IntervalMatrix forward_perturbation(const HenonParams& p, const JordanFrame& f) {
  const Interval w = p.tau * kUnit + p.eta * kUnit;
  const Interval factor = -(Interval(2.0) * p.a * p.epsilon * sqr(f.kappa)) * w;
  return factor * mat2(-f.lambda1, -(p.eta / p.tau) * f.lambda1, (p.tau / p.eta) * f.lambda2, f.lambda2);
}

IntervalMatrix backward_perturbation(const HenonParams& p, const JordanFrame& f) {
  const Interval w = p.tau * f.lambda2 * kUnit + p.eta * f.lambda1 * kUnit;
  const Interval factor = (Interval(2.0) * p.a / sqr(p.b)) * p.epsilon * sqr(f.kappa) * w;
  return factor * mat2(-f.lambda2, -(p.eta / p.tau) * f.lambda1, (p.tau / p.eta) * f.lambda2, f.lambda1);
}

// Printed radii of the fiber perturbation, entrywise.
IntervalMatrix forward_printed_radius(const HenonParams& p) {
  const Interval k = p.epsilon * (p.tau + p.eta);
  const Interval half = Interval(0.5);
  const Interval small = Interval::from_decimal("0.006");
  return k * mat2(half, half * p.eta / p.tau, small * p.tau / p.eta, small);
}

IntervalMatrix backward_printed_radius(const HenonParams& p, const JordanFrame& f) {
  const Interval k = p.epsilon * (p.tau * abs(f.lambda2) + p.eta * abs(f.lambda1));
  const Interval six = Interval::from_decimal("0.6");
  const Interval fifty(50.0);
  return k * mat2(six, fifty * p.eta / p.tau, six * p.tau / p.eta, fifty);
}

IntervalMatrix widen(const IntervalMatrix& centre, const IntervalMatrix& radius) {
  IntervalMatrix out = centre;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = centre(i, j) + radius(i, j) * kUnit;
  }
  return out;
}

IntervalMatrix diag2(const Interval& a, const Interval& b) { return mat2(a, Interval(0.0), Interval(0.0), b); }

// Base column of the derivative in phi-coordinates. F_0 does not depend on
// theta, so the column vanishes at epsilon = 0.
std::array<Interval, 2> coupling(const HenonParams& p, const JordanFrame& f, Direction dir) {
  if (eps_is_zero(p)) return {Interval(0.0), Interval(0.0)};
  const Interval two_pi_v = two_pi_interval() / Interval(static_cast<double>(p.v));
  if (dir == Direction::forward) {
    return {two_pi_v * f.lambda1 / p.tau * kUnit, two_pi_v * f.lambda2 / p.eta * kUnit};
  }
  return {two_pi_v / p.tau * kUnit, two_pi_v / p.eta * kUnit};
}

BlockBounds assemble_blocks(const HenonParams& p, const JordanFrame& f, Direction dir, const IntervalMatrix& fiber) {
  const auto col = coupling(p, f, dir);
  const Interval zero(0.0);
  return BlockBounds::scalar({{{Interval(1.0), zero, zero},
                               {col[0], fiber(0, 0), fiber(0, 1)},
                               {col[1], fiber(1, 0), fiber(1, 1)}}});
}

IntervalMatrix fiber_for(const HenonParams& p, const JordanFrame& f, Direction dir, EnclosureSource source) {
  if (dir == Direction::forward) {
    return source == EnclosureSource::direct ? forward_fiber_direct(p, f) : forward_fiber_printed(p, f);
  }
  return source == EnclosureSource::direct ? backward_fiber_direct(p, f) : backward_fiber_printed(p, f);
}

// Derivative blocks in unstable/stable role order.
BlockBounds role_blocks(const HenonParams& p, Direction dir, EnclosureSource source) {
  return dir == Direction::forward ? forward_jac_enclosure(p, source)
                                   : backward_jac_enclosure(p, source).swap_fiber_roles();
}

DerivativeBounds bounds_for(const HenonParams& p, Direction dir, EnclosureSource source) {
  return DerivativeBounds::from_blocks(role_blocks(p, dir, source));
}

// Covering radii for the zero-section image.
std::pair<double, double> covering_radii(const HenonParams& p, const JordanFrame& f, Direction dir) {
  if (dir == Direction::forward) return {(f.lambda1 / p.tau).mag(), (f.lambda2 / p.eta).mag()};
  return {(Interval(1.0) / p.eta).mag(), (Interval(1.0) / p.tau).mag()};
}

// Unstable and stable coordinates of the image of the zero section, for a
// cosine enclosure c of the forcing phase.
std::pair<Interval, Interval> zero_fibers(const HenonParams& p, const JordanFrame& f, Direction dir,
                                          const Interval& c) {
  if (eps_is_zero(p)) return {Interval(0.0), Interval(0.0)};
  if (dir == Direction::forward) return {-(f.lambda1 / p.tau) * c, (f.lambda2 / p.eta) * c};
  return {-(Interval(1.0) / p.eta) * c, (Interval(1.0) / p.tau) * c};
}

ChartTripleInput uniform_triple(const HenonParams& p, const JordanFrame& f, Direction dir, const BlockBounds& jac) {
  // For every j the image of V_j seen from i1 = floor(j +- v omega) - 2 is
  // [2 + t, 7 + t] with t in [0, 1).
  ChartTripleInput t;
  t.j = t.i0 = t.i1 = -1;
  t.zero_base = {Interval(2.0, 8.0)};
  t.target_window = {Interval(0.0, 9.0)};
  const auto [u, s] = zero_fibers(p, f, dir, kUnit);
  t.zero_u = {u};
  t.zero_s = {s};
  t.jac = jac;
  std::tie(t.eps_u, t.eps_s) = covering_radii(p, f, dir);
  return t;
}

std::string triple_label(const ChartTripleInput& t) {
  if (t.j < 0) return "all j (uniform in theta)";
  return "j=" + std::to_string(t.j) + " i0=" + std::to_string(t.i0) + " i1=" + std::to_string(t.i1);
}

InequalityCheck cone_check(const ConeVerdict& v, std::size_t k) {
  InequalityCheck c;
  c.lhs = v.lhs[k];
  c.relation = k == 1 ? '>' : '<';
  c.rhs = Interval(v.m);
  c.slack = v.slack[k];
  c.holds = k == 1 ? v.lhs[k].lo() > v.m : v.lhs[k].hi() < v.m;
  return c;
}

// |R_ij| / r_ij <= 1 for every entry, where r is the printed radius.
InequalityCheck enclosure_check(const IntervalMatrix& perturbation, const IntervalMatrix& radius) {
  double ratio = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double num = perturbation(i, j).mag();
      const double den = radius(i, j).lo();
      if (num == 0.0) continue;
      ratio = std::max(ratio, den > 0.0 ? rounding::div_up(num, den) : std::numeric_limits<double>::infinity());
    }
  }
  return make_less(Interval(ratio), Interval(1.0), true);
}

void run_direction(const HenonParams& p, double m, Direction dir, const VerifyOptions& opts,
                   std::vector<InequalityRecord>& out) {
  const bool fwd = dir == Direction::forward;
  const JordanFrame f = eigen_data(p);

  if (opts.source == EnclosureSource::printed) {
    const auto check = fwd ? enclosure_check(forward_perturbation(p, f), forward_printed_radius(p))
                           : enclosure_check(backward_perturbation(p, f), backward_printed_radius(p, f));
    out.push_back({fwd ? "der-encl-forw-n" : "der-encl-back", check, "max |R_ij| / printed radius"});
  }

  const BlockBounds jac = role_blocks(p, dir, opts.source);

  if (opts.covering) {
    const auto triples = p.v <= kMaxEnumeratedV ? henon_chart_triples(p, dir, jac)
                                                : std::vector<ChartTripleInput>{uniform_triple(p, f, dir, jac)};
    const CoveringVerdict verdict = check_covering(triples, opts.threads);
    std::size_t worst_zero = 0, worst_exp = 0, worst_con = 0;
    for (std::size_t k = 1; k < triples.size(); ++k) {
      const auto& d = verdict.triples[k];
      if (d.zero_image_slack < verdict.triples[worst_zero].zero_image_slack) worst_zero = k;
      if (d.expansion_lower < verdict.triples[worst_exp].expansion_lower) worst_exp = k;
      if (d.contraction_upper > verdict.triples[worst_con].contraction_upper) worst_con = k;
    }
    out.push_back({fwd ? "zero-image" : "zero-image-inv", check_zero_image(triples[worst_zero]),
                   triple_label(triples[worst_zero])});
    out.push_back({fwd ? "cover-est-henon1" : "cover-est-henon3", check_expansion(triples[worst_exp]),
                   triple_label(triples[worst_exp])});
    out.push_back({fwd ? "cover-est-henon2" : "cover-est-henon4", check_contraction(triples[worst_con]),
                   triple_label(triples[worst_con])});
  }

  if (opts.cones) {
    const ConeVerdict verdict = check_cone_conditions(DerivativeBounds::from_blocks(jac), m);
    const std::string detail = "v=" + std::to_string(p.v) + " m=" + format_double(m);
    const std::string prefix = fwd ? "cone-est1-forward-" : "cone-est1-backward-";
    for (std::size_t k = 0; k < 3; ++k) out.push_back({prefix + std::to_string(k + 1), cone_check(verdict, k), detail});
  }
}

HenonVerification verify_direction(const HenonParams& p, double m, Direction dir, const VerifyOptions& opts) {
  require_rate(m);
  p.validate();
  HenonParams q = p;
  if (q.v == 0) q.v = opts.cones ? select_v(p, m, dir, opts.source) : kFirstV;
  HenonVerification result;
  result.v = q.v;
  run_direction(q, m, dir, opts, result.records);
  return result;
}

}  // namespace

Interval golden_mean_fraction() { return (sqrt(Interval(5.0)) - Interval(1.0)) / Interval(2.0); }

void HenonParams::validate() const {
  if (a.contains_zero()) throw InvalidArgument("parameter a must be nonzero, got " + to_string(a));
  if (b.contains_zero()) throw InvalidArgument("parameter b must be nonzero so the map is invertible, got " + to_string(b));
  const Interval disc = sqr(Interval(1.0) - b) + Interval(4.0) * a;
  if (!(disc.lo() > 0.0)) {
    throw InvalidArgument("(1-b)^2 + 4a must be > 0 for real fixed points, got " + to_string(disc));
  }
  if (!(tau.lo() > 0.0)) throw InvalidArgument("tau must be > 0, got " + to_string(tau));
  if (!(eta.lo() > 0.0)) throw InvalidArgument("eta must be > 0, got " + to_string(eta));
  if (epsilon.lo() < 0.0) throw InvalidArgument("epsilon must be >= 0, got " + to_string(epsilon));
  if (epsilon.lo() == 0.0 && epsilon.hi() > 0.0) {
    throw InvalidArgument("epsilon must be exactly 0 or bounded away from 0, got " + to_string(epsilon));
  }
  for (const Interval* x : {&a, &b, &omega, &epsilon, &tau, &eta}) {
    if (!std::isfinite(x->lo()) || !std::isfinite(x->hi())) throw InvalidArgument("parameters must be finite");
  }
  if (v != 0 && v < CircleAtlas::kMinCircumference) {
    throw InvalidArgument("atlas circumference v must be 0 (automatic) or >= 9, got " + std::to_string(v));
  }
}

std::pair<Interval, Interval> fixed_point(const HenonParams& p) {
  if (p.a.contains_zero()) throw InvalidArgument("parameter a must be nonzero, got " + to_string(p.a));
  const Interval one_minus_b = Interval(1.0) - p.b;
  const Interval disc = sqr(one_minus_b) + Interval(4.0) * p.a;
  if (!(disc.lo() > 0.0)) throw DomainError("fixed-point discriminant is not positive: " + to_string(disc));
  const Interval x = (-one_minus_b - sqrt(disc)) / (Interval(2.0) * p.a);
  return {x, p.b * x};
}

JordanFrame eigen_data(const HenonParams& p) {
  JordanFrame f;
  std::tie(f.x_minus, f.y_minus) = fixed_point(p);
  const Interval ax = p.a * f.x_minus;
  const Interval disc = p.b + sqr(ax);
  if (!(disc.lo() > 0.0)) {
    throw DomainError("eigenvalues at the fixed point are not real and distinct: b + (a x)^2 = " + to_string(disc));
  }
  const Interval root = sqrt(disc);
  f.lambda1 = -ax + root;
  f.lambda2 = -ax - root;
  f.kappa = Interval(-1.0) / (Interval(2.0) * root);
  f.scale = eps_is_zero(p) ? Interval(1.0) : p.epsilon;
  const Interval inv_scale = Interval(1.0) / f.scale;
  f.phi = inv_scale * mat2(-f.lambda1 / p.tau, -Interval(1.0) / p.tau, f.lambda2 / p.eta, Interval(1.0) / p.eta);
  f.phi_inv = (f.scale * f.kappa) * mat2(p.tau, p.eta, -p.tau * f.lambda2, -f.lambda1 * p.eta);
  return f;
}

IntervalMatrix henon_jacobian(const HenonParams& p, const Interval& x) {
  return mat2(Interval(-2.0) * p.a * x, Interval(1.0), p.b, Interval(0.0));
}

IntervalMatrix forward_fiber_direct(const HenonParams& p, const JordanFrame& f) {
  return diag2(f.lambda1, f.lambda2) + forward_perturbation(p, f);
}

IntervalMatrix forward_fiber_printed(const HenonParams& p, const JordanFrame& f) {
  return widen(diag2(f.lambda1, f.lambda2), forward_printed_radius(p));
}

IntervalMatrix backward_fiber_direct(const HenonParams& p, const JordanFrame& f) {
  const Interval one(1.0);
  return diag2(one / f.lambda1, one / f.lambda2) + backward_perturbation(p, f);
}

IntervalMatrix backward_fiber_printed(const HenonParams& p, const JordanFrame& f) {
  const Interval one(1.0);
  return widen(diag2(one / f.lambda1, one / f.lambda2), backward_printed_radius(p, f));
}

BlockBounds forward_jac_enclosure(const HenonParams& p, EnclosureSource source) {
  require_v(p);
  const JordanFrame f = eigen_data(p);
  return assemble_blocks(p, f, Direction::forward, fiber_for(p, f, Direction::forward, source));
}

BlockBounds backward_jac_enclosure(const HenonParams& p, EnclosureSource source) {
  require_v(p);
  const JordanFrame f = eigen_data(p);
  return assemble_blocks(p, f, Direction::backward, fiber_for(p, f, Direction::backward, source));
}

DerivativeBounds assemble_forward_bounds(const HenonParams& p, EnclosureSource source) {
  return bounds_for(p, Direction::forward, source);
}

DerivativeBounds assemble_backward_bounds(const HenonParams& p, EnclosureSource source) {
  return bounds_for(p, Direction::backward, source);
}

std::vector<ChartTripleInput> henon_chart_triples(const HenonParams& p, Direction dir, const BlockBounds& jac) {
  require_v(p);
  const CircleAtlas atlas(p.v);
  const JordanFrame f = eigen_data(p);
  const Interval v(static_cast<double>(p.v));
  const Interval shift = dir == Direction::forward ? v * p.omega : -(v * p.omega);
  const auto [eps_u, eps_s] = covering_radii(p, f, dir);

  std::vector<ChartTripleInput> out;
  out.reserve(static_cast<std::size_t>(p.v) * (atlas.u_len() - atlas.v_len() + 1));
  for (int j = 0; j < p.v; ++j) {
    const Interval image_start = Interval(static_cast<double>(j)) + shift;
    const int i1 = atlas.wrap(static_cast<long long>(std::floor(image_start.mid())) - 2);
    for (int i0 : atlas.charts_containing_V(j)) {
      const Interval range = atlas.in_chart(i0, Interval(j, j + atlas.v_len()));
      const Interval phase = dir == Direction::forward ? two_pi_interval() * range / v
                                                       : two_pi_interval() * (range / v - p.omega);
      const auto [u, s] = zero_fibers(p, f, dir, cos(phase));

      ChartTripleInput t;
      t.j = j;
      t.i0 = i0;
      t.i1 = i1;
      t.zero_base = {atlas.in_chart(i1, range + shift)};
      t.target_window = {Interval(i1, i1 + atlas.u_len())};
      t.zero_u = {u};
      t.zero_s = {s};
      t.jac = jac;
      t.eps_u = eps_u;
      t.eps_s = eps_s;
      out.push_back(std::move(t));
    }
  }
  return out;
}

bool HenonVerification::certified() const {
  return !records.empty() &&
         std::all_of(records.begin(), records.end(), [](const InequalityRecord& r) { return r.check.holds; });
}

std::optional<std::string> HenonVerification::first_failure() const {
  for (const auto& r : records) {
    if (!r.check.holds) return r.name;
  }
  return std::nullopt;
}

int select_v(const HenonParams& p, double m, Direction dir, EnclosureSource source) {
  require_rate(m);
  HenonParams q = p;
  q.v = kFirstV;
  DerivativeBounds b = bounds_for(q, dir, source);

  DerivativeBounds limit = b;
  limit.M = 0.0;
  limit.mu = 0.0;
  // No circumference can help when the M -> 0 limit already fails.
  if (!check_cone_conditions(limit, m).holds) return kFirstV;

  std::int64_t v = kFirstV;
  if (const auto factor = suggest_v(b, m)) v = static_cast<std::int64_t>(std::min<double>(*factor * v, kMaxV));
  for (; v < kMaxV; v *= 2) {
    q.v = static_cast<int>(v);
    const ConeVerdict verdict = check_cone_conditions(bounds_for(q, dir, source), m);
    if (verdict.holds && verdict.margin >= kConeSlack) break;
  }
  return static_cast<int>(std::min<std::int64_t>(v, kMaxV));
}

HenonVerification verify_forward(const HenonParams& p, double m, const VerifyOptions& opts) {
  return verify_direction(p, m, Direction::forward, opts);
}

HenonVerification verify_backward(const HenonParams& p, double m, const VerifyOptions& opts) {
  return verify_direction(p, m, Direction::backward, opts);
}

RegionReport region_bound(const HenonParams& p) {
  p.validate();
  const JordanFrame f = eigen_data(p);
  const Interval k = abs(f.kappa);
  const Interval hx = p.epsilon * k * (p.tau + p.eta);
  const Interval hy = p.epsilon * k * (p.tau * abs(f.lambda2) + p.eta * abs(f.lambda1));
  const Interval ux = Interval::from_decimal("1.1") * p.epsilon;
  const Interval uy = Interval::from_decimal("0.12") * p.epsilon;
  const Interval circle(0.0, 1.0);

  RegionReport r;
  r.d_box = {circle, f.x_minus + Interval(-hx.hi(), hx.hi()), f.y_minus + Interval(-hy.hi(), hy.hi())};
  r.u_box = {circle, f.x_minus + Interval(-ux.lo(), ux.lo()), f.y_minus + Interval(-uy.lo(), uy.lo())};
  r.x_check = make_less(hx, ux, true);
  r.y_check = make_less(hy, uy, true);
  return r;
}

HenonVerification verify_henon(const HenonParams& p, double m_forward, double m_backward, const FullOptions& opts) {
  require_rate(m_forward);
  require_rate(m_backward);
  p.validate();

  HenonParams q = p;
  if (q.v == 0) {
    q.v = kFirstV;
    if (opts.cones && opts.forward) q.v = std::max(q.v, select_v(p, m_forward, Direction::forward, opts.source));
    if (opts.cones && opts.backward) q.v = std::max(q.v, select_v(p, m_backward, Direction::backward, opts.source));
  }

  const VerifyOptions dir_opts{opts.covering, opts.cones, opts.source, opts.threads};
  HenonVerification result;
  result.v = q.v;
  if (opts.covering || opts.cones) {
    if (opts.forward) run_direction(q, m_forward, Direction::forward, dir_opts, result.records);
    if (opts.backward) run_direction(q, m_backward, Direction::backward, dir_opts, result.records);
  }
  if (opts.region) {
    const RegionReport r = region_bound(q);
    result.records.push_back({"U-epsilon-x", r.x_check, "half-width of |D| in x against 1.1 epsilon"});
    result.records.push_back({"U-epsilon-y", r.y_check, "half-width of |D| in y against 0.12 epsilon"});
  }
  return result;
}

ScanResult max_certified_epsilon(const HenonParams& p, double m_forward, double m_backward, const FullOptions& opts,
                                 double upper_limit) {
  require_rate(m_forward);
  require_rate(m_backward);
  if (!(upper_limit > 0.0) || !std::isfinite(upper_limit)) {
    throw InvalidArgument("scan upper limit must be finite and > 0, got " + format_double(upper_limit));
  }
  constexpr int kGridBits = 20;
  const auto at = [](std::int64_t k) { return std::ldexp(static_cast<double>(k), -kGridBits); };

  ScanResult result;
  const auto certifies = [&](std::int64_t k) {
    HenonParams q = p;
    q.epsilon = Interval(at(k));
    ++result.evaluations;
    return verify_henon(q, m_forward, m_backward, opts).certified();
  };

  if (!certifies(0)) throw DomainError("no epsilon certifies, not even epsilon = 0; the parameters are inconsistent");

  const auto limit = static_cast<std::int64_t>(std::floor(std::ldexp(upper_limit, kGridBits)));
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;
  for (std::int64_t k = std::min<std::int64_t>(std::int64_t{1} << kGridBits, limit); k > lo;
       k = std::min(2 * k, limit)) {
    if (!certifies(k)) {
      hi = k;
      break;
    }
    lo = k;
  }
  if (hi) {
    while (*hi - lo > 1) {
      const std::int64_t mid = lo + (*hi - lo) / 2;
      (certifies(mid) ? lo : *hi) = mid;
    }
    result.first_failure = at(*hi);
  }
  result.epsilon_max = at(lo);
  return result;
}

Point3 henon_forward(const HenonParams& p, const Point3& q) {
  const double a = p.a.mid(), b = p.b.mid(), w = p.omega.mid(), e = p.epsilon.mid();
  const double two_pi = 2.0 * std::acos(-1.0);
  double theta = q.theta + w;
  theta -= std::floor(theta);
  return {theta, 1.0 + q.y - a * q.x * q.x + e * std::cos(two_pi * q.theta), b * q.x};
}

Point3 henon_inverse(const HenonParams& p, const Point3& q) {
  const double a = p.a.mid(), b = p.b.mid(), w = p.omega.mid(), e = p.epsilon.mid();
  const double two_pi = 2.0 * std::acos(-1.0);
  double theta = q.theta - w;
  theta -= std::floor(theta);
  const double x = q.y / b;
  return {theta, x, q.x - 1.0 + a * x * x - e * std::cos(two_pi * theta)};
}

}  // namespace nhim
