// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "nhim/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>

#include "nhim/error.hpp"

namespace nhim {
namespace {

constexpr std::array<std::pair<Mode, const char*>, 5> kModes{{{Mode::henon_verify, "henon-verify"},
                                                              {Mode::henon_scan, "henon-scan"},
                                                              {Mode::cones_check, "cones-check"},
                                                              {Mode::covering_check, "covering-check"},
                                                              {Mode::atlas_validate, "atlas-validate"}}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

std::string checked_decimal(std::string_view key, std::string_view value) {
  try {
    Interval::from_decimal(value);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(std::string(key) + ": " + e.what());
  }
  return std::string(value);
}

double parse_real(std::string_view key, std::string_view value) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(x)) {
    throw InvalidArgument(std::string(key) + ": not a finite number: '" + std::string(value) + "'");
  }
  return x;
}

int parse_count(std::string_view key, std::string_view value) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size() || x < 0) {
    throw InvalidArgument(std::string(key) + ": not a non-negative integer: '" + std::string(value) + "'");
  }
  return x;
}

Interval interval_of(const std::string& text) {
  if (text == "golden") return golden_mean_fraction();
  return Interval::from_decimal(text);
}

}  // namespace

std::string to_string(Mode mode) {
  for (const auto& [m, name] : kModes) {
    if (m == mode) return name;
  }
  return "unknown";
}

std::string to_string(OutputFormat format) { return format == OutputFormat::text ? "text" : "structured"; }

std::string to_string(EnclosureSource source) { return source == EnclosureSource::printed ? "printed" : "direct"; }

void RunConfig::set(std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(raw_key);
  const std::string_view value = trim(raw_value);
  if (key == "mode") {
    std::string name(value);
    std::replace(name.begin(), name.end(), '_', '-');
    const auto it = std::find_if(kModes.begin(), kModes.end(), [&](const auto& m) { return name == m.second; });
    if (it == kModes.end()) throw InvalidArgument("mode: unknown mode '" + std::string(value) + "'");
    mode = it->first;
  } else if (key == "a") {
    a = checked_decimal(key, value);
  } else if (key == "b") {
    b = checked_decimal(key, value);
  } else if (key == "omega") {
    omega = value == "golden" ? std::string(value) : checked_decimal(key, value);
  } else if (key == "epsilon") {
    epsilon = checked_decimal(key, value);
  } else if (key == "tau") {
    tau = checked_decimal(key, value);
  } else if (key == "eta") {
    eta = checked_decimal(key, value);
  } else if (key == "v") {
    v = parse_count(key, value);
  } else if (key == "m_forward") {
    m_forward = parse_real(key, value);
  } else if (key == "m_backward") {
    m_backward = parse_real(key, value);
  } else if (key == "out") {
    out = std::string(value);
  } else if (key == "format") {
    if (value == "text") {
      format = OutputFormat::text;
    } else if (value == "structured") {
      format = OutputFormat::structured;
    } else {
      throw InvalidArgument("format: expected text or structured, got '" + std::string(value) + "'");
    }
  } else if (key == "enclosure") {
    if (value == "printed") {
      enclosure = EnclosureSource::printed;
    } else if (value == "direct") {
      enclosure = EnclosureSource::direct;
    } else {
      throw InvalidArgument("enclosure: expected printed or direct, got '" + std::string(value) + "'");
    }
  } else {
    throw InvalidArgument("unknown key '" + key + "'");
  }
}

std::string RunConfig::get(std::string_view raw_key) const {
  const std::string key = normalize_key(raw_key);
  for (auto& [k, value] : entries()) {
    if (k == key) return value;
  }
  throw InvalidArgument("unknown key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  return {{"mode", to_string(mode)},
          {"a", a},
          {"b", b},
          {"omega", omega},
          {"epsilon", epsilon},
          {"tau", tau},
          {"eta", eta},
          {"v", std::to_string(v)},
          {"m_forward", format_double(m_forward)},
          {"m_backward", format_double(m_backward)},
          {"enclosure", to_string(enclosure)},
          {"format", to_string(format)},
          {"out", out}};
}

HenonParams RunConfig::henon_params() const {
  HenonParams p;
  p.a = interval_of(a);
  p.b = interval_of(b);
  p.omega = interval_of(omega);
  p.epsilon = interval_of(epsilon);
  p.tau = interval_of(tau);
  p.eta = interval_of(eta);
  p.v = v;
  return p;
}

void RunConfig::validate() const {
  henon_params().validate();
  for (const auto& [name, m] : {std::pair{"m_forward", m_forward}, std::pair{"m_backward", m_backward}}) {
    if (!(m > 1.0)) throw InvalidArgument(std::string(name) + " must be > 1, got " + format_double(m));
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + std::string(line) + "'",
                       line_no, "");
    }
    const std::string key = normalize_key(line.substr(0, eq));
    if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": missing key", line_no, "");
    if (!seen.insert(key).second) {
      throw ParseError("line " + std::to_string(line_no) + ": key '" + key + "' given twice", line_no, key);
    }
    try {
      config.set(key, line.substr(eq + 1));
    } catch (const InvalidArgument& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), line_no, key);
    }
  }
  return config;
}

RunConfig config_from_certificate(std::string_view certificate) {
  constexpr std::string_view kPrefix = "param.";
  std::string params;
  while (!certificate.empty()) {
    const auto nl = certificate.find('\n');
    const std::string_view line = certificate.substr(0, nl);
    certificate = nl == std::string_view::npos ? std::string_view{} : certificate.substr(nl + 1);
    if (line.substr(0, kPrefix.size()) == kPrefix) {
      params.append(line.substr(kPrefix.size()));
      params.push_back('\n');
    }
  }
  return parse_config(params);
}

}  // namespace nhim
