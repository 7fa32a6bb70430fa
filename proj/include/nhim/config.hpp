// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhim/henon.hpp"

namespace nhim {

enum class Mode { henon_verify, henon_scan, cones_check, covering_check, atlas_validate };
enum class OutputFormat { text, structured };

// Run configuration. Real parameters are kept as the decimal text they were
// given in, so that echoing them reproduces the configuration exactly; they
// are turned into outward-rounded intervals by henon_params().
//
// Text form: one `key = value` per line, `#` starts a comment, `-` and `_`
// are interchangeable in keys. Keys:
//   mode        henon-verify | henon-scan | cones-check | covering-check | atlas-validate
//   a b tau eta epsilon        decimal numbers
//   omega       decimal number or `golden` ((sqrt(5) - 1) / 2)
//   v           atlas circumference, 0 = automatic
//   m_forward m_backward       cone expansion rates
//   out         output path, empty for stdout
//   format      text | structured
//   enclosure   printed | direct
struct RunConfig {
  Mode mode = Mode::henon_verify;
  std::string a = "0.68";
  std::string b = "0.1";
  std::string omega = "golden";
  std::string epsilon = "0.5";
  std::string tau = "3";
  std::string eta = "0.075";
  int v = 0;
  double m_forward = 2.0;
  double m_backward = 200.0;
  std::string out;
  OutputFormat format = OutputFormat::text;
  EnclosureSource enclosure = EnclosureSource::printed;

  // Sets one key from its text value. Throws InvalidArgument for unknown keys
  // or values that do not parse.
  void set(std::string_view key, std::string_view value);
  std::string get(std::string_view key) const;
  // All keys with their current values, in a fixed order.
  std::vector<std::pair<std::string, std::string>> entries() const;

  HenonParams henon_params() const;
  // Cross-field checks: parameter invariants, m > 1, v = 0 or v >= 9.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string to_string(Mode mode);
std::string to_string(OutputFormat format);
std::string to_string(EnclosureSource source);

// Throws ParseError with the 1-based line and key on malformed lines,
// unknown or repeated keys and values that do not parse. Does not run
// validate(); an empty text gives the defaults.
RunConfig parse_config(std::string_view text);

// Rebuilds the configuration from the `param.` lines of a structured
// certificate.
RunConfig config_from_certificate(std::string_view certificate);

}  // namespace nhim
