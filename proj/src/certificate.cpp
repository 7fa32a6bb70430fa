// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "nhim/certificate.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <sstream>

#include "nhim/atlas.hpp"
#include "nhim/error.hpp"

#ifndef NHIM_VERSION_STRING
#define NHIM_VERSION_STRING "0.0.0"
#endif

namespace nhim {
namespace {

constexpr const char* kConclusion = "invariant C0 manifold homeomorphic to T1 inside U_epsilon";

std::string relation_of(const InequalityCheck& c) { return std::string(1, c.relation) + (c.or_equal ? "=" : ""); }

void add_frame(Certificate& cert, const HenonParams& p) {
  const JordanFrame f = eigen_data(p);
  cert.derived.emplace_back("x_minus", to_string(f.x_minus));
  cert.derived.emplace_back("y_minus", to_string(f.y_minus));
  cert.derived.emplace_back("lambda1", to_string(f.lambda1));
  cert.derived.emplace_back("lambda2", to_string(f.lambda2));
  cert.derived.emplace_back("kappa", to_string(f.kappa));
}

void add_region(Certificate& cert, const HenonParams& p) {
  const RegionReport r = region_bound(p);
  cert.derived.emplace_back("region.d_box.x", to_string(r.d_box.x));
  cert.derived.emplace_back("region.d_box.y", to_string(r.d_box.y));
  cert.derived.emplace_back("region.u_box.x", to_string(r.u_box.x));
  cert.derived.emplace_back("region.u_box.y", to_string(r.u_box.y));
}

std::string failure_text(const Certificate& cert) {
  for (const auto& r : cert.records) {
    if (!r.check.holds) return "not certified: " + r.name + " fails (" + r.detail + ")";
  }
  return "not certified";
}

void run_henon(Certificate& cert, const HenonParams& p, const FullOptions& opts, const std::string& success) {
  add_frame(cert, p);
  const HenonVerification result = verify_henon(p, cert.config.m_forward, cert.config.m_backward, opts);
  cert.derived.emplace_back("v", std::to_string(result.v));
  if (opts.region) add_region(cert, p);
  cert.records = result.records;
  cert.conclusion = cert.certified() ? success : failure_text(cert);
}

void run_scan(Certificate& cert, const HenonParams& p, const FullOptions& opts) {
  add_frame(cert, p);
  const ScanResult s = max_certified_epsilon(p, cert.config.m_forward, cert.config.m_backward, opts);
  cert.derived.emplace_back("scan.grid", "2^-20");
  cert.derived.emplace_back("scan.epsilon_max", format_double(s.epsilon_max));
  cert.derived.emplace_back("scan.first_failure", s.first_failure ? format_double(*s.first_failure) : "none");
  cert.derived.emplace_back("scan.evaluations", std::to_string(s.evaluations));
  // The configured epsilon is the target the scan has to reach.
  cert.records.push_back({"epsilon-scan", make_less(p.epsilon, Interval(s.epsilon_max), true),
                          "configured epsilon against the largest certified epsilon"});
  std::string bracket = "epsilon_max = " + format_double(s.epsilon_max);
  if (s.first_failure) bracket += ", " + format_double(*s.first_failure) + " fails";
  cert.conclusion = cert.certified() ? bracket : failure_text(cert) + "; " + bracket;
}

void run_atlas(Certificate& cert) {
  std::vector<int> sizes;
  if (cert.config.v == 0) {
    for (int v = CircleAtlas::kMinCircumference; v <= 50; ++v) sizes.push_back(v);
  } else {
    sizes.push_back(cert.config.v);
  }
  std::string failing;
  int failures = 0;
  for (int v : sizes) {
    if (!validate_cone_containment(build_atlas(v))) {
      ++failures;
      failing += (failing.empty() ? "" : ",") + std::to_string(v);
    }
  }
  cert.derived.emplace_back("atlas.sizes", std::to_string(sizes.front()) + ".." + std::to_string(sizes.back()));
  cert.records.push_back({"atlas-cone-containment", make_less(Interval(failures), Interval(0.0), true),
                          failing.empty() ? "failing sizes: none" : "failing sizes: " + failing});
  cert.conclusion = cert.certified() ? "cone containment holds for every checked atlas" : failure_text(cert);
}

}  // namespace

std::string version_string() { return NHIM_VERSION_STRING; }

std::string current_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    char* end = nullptr;
    const long long value = std::strtoll(epoch, &end, 10);
    if (*end == '\0') t = static_cast<std::time_t>(value);
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool Certificate::certified() const {
  return !records.empty() &&
         std::all_of(records.begin(), records.end(), [](const InequalityRecord& r) { return r.check.holds; });
}

std::string render_structured(const Certificate& cert, const std::string& timestamp) {
  std::ostringstream os;
  os << "schema = " << kCertificateSchema << '\n';
  os << "version = " << version_string() << '\n';
  os << "timestamp = " << timestamp << '\n';
  for (const auto& [k, v] : cert.config.entries()) os << "param." << k << " = " << v << '\n';
  for (const auto& [k, v] : cert.derived) os << "derived." << k << " = " << v << '\n';
  os << "records = " << cert.records.size() << '\n';
  for (const auto& r : cert.records) {
    const std::string key = "record." + r.name + ".";
    os << key << "lhs = " << to_string(r.check.lhs) << '\n';
    os << key << "relation = " << relation_of(r.check) << '\n';
    os << key << "rhs = " << to_string(r.check.rhs) << '\n';
    os << key << "slack = " << format_double(r.check.slack) << '\n';
    os << key << "pass = " << (r.check.holds ? "true" : "false") << '\n';
    os << key << "detail = " << r.detail << '\n';
  }
  os << "verdict = " << (cert.certified() ? "certified" : "not-certified") << '\n';
  os << "conclusion = " << cert.conclusion << '\n';
  return os.str();
}

std::string render_text(const Certificate& cert, const std::string& timestamp) {
  std::ostringstream os;
  os << "nhimcert " << version_string() << "  mode " << to_string(cert.config.mode) << "  " << timestamp << "\n\n";
  os << "parameters\n";
  for (const auto& [k, v] : cert.config.entries()) {
    if (!v.empty()) os << "  " << k << " = " << v << '\n';
  }
  if (!cert.derived.empty()) {
    os << "derived\n";
    for (const auto& [k, v] : cert.derived) os << "  " << k << " = " << v << '\n';
  }

  std::vector<std::array<std::string, 6>> rows{{"inequality", "bound", "rel", "threshold", "slack", "pass"}};
  for (const auto& r : cert.records) {
    rows.push_back({r.name, to_string(r.check.lhs), relation_of(r.check), to_string(r.check.rhs),
                    format_double(r.check.slack), r.check.holds ? "yes" : "NO"});
  }
  std::array<std::size_t, 6> width{};
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  os << '\n';
  for (const auto& row : rows) {
    os << ' ';
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << ' ' << row[c];
      if (c + 1 < row.size()) os << std::string(width[c] - row[c].size(), ' ');
    }
    os << '\n';
  }
  os << "\nverdict: " << (cert.certified() ? "CERTIFIED" : "NOT CERTIFIED") << '\n';
  os << cert.conclusion << '\n';
  return os.str();
}

std::string render(const Certificate& cert, OutputFormat format, const std::string& timestamp) {
  return format == OutputFormat::structured ? render_structured(cert, timestamp) : render_text(cert, timestamp);
}

Certificate run(const RunConfig& config, unsigned threads) {
  config.validate();
  const HenonParams p = config.henon_params();
  Certificate cert;
  cert.config = config;

  FullOptions opts;
  opts.source = config.enclosure;
  opts.threads = std::max(1u, threads);
  switch (config.mode) {
    case Mode::henon_verify:
      run_henon(cert, p, opts, kConclusion);
      break;
    case Mode::covering_check:
      opts.cones = false;
      opts.region = false;
      run_henon(cert, p, opts, "covering relations hold for F_epsilon and its inverse");
      break;
    case Mode::cones_check:
      opts.covering = false;
      opts.region = false;
      run_henon(cert, p, opts, "cone conditions hold for F_epsilon and its inverse");
      break;
    case Mode::henon_scan:
      run_scan(cert, p, opts);
      break;
    case Mode::atlas_validate:
      run_atlas(cert);
      break;
  }
  return cert;
}

}  // namespace nhim
