// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nhim/config.hpp"
#include "nhim/henon.hpp"

namespace nhim {

inline constexpr const char* kCertificateSchema = "nhimcert.certificate/1";

std::string version_string();

// UTC time as YYYY-MM-DDThh:mm:ssZ; SOURCE_DATE_EPOCH (seconds) overrides
// the clock when set.
std::string current_timestamp();

// Outcome of one run: the echoed configuration, derived quantities, every
// checked inequality, and the verdict (the conjunction of all records).
struct Certificate {
  RunConfig config;
  std::vector<std::pair<std::string, std::string>> derived;
  std::vector<InequalityRecord> records;
  std::string conclusion;

  bool certified() const;
};

// Line-delimited `key = value` text:
//   schema, version, timestamp, param.<key>, derived.<key>, records,
//   record.<name>.{lhs,relation,rhs,slack,pass,detail}, verdict, conclusion.
// Numbers use the shortest decimal that reads back to the same double, so
// identical runs give identical bytes apart from the timestamp line.
std::string render_structured(const Certificate& cert, const std::string& timestamp);

// Human-readable summary with an inequality table.
std::string render_text(const Certificate& cert, const std::string& timestamp);

std::string render(const Certificate& cert, OutputFormat format, const std::string& timestamp);

// Executes the configured mode. Throws InvalidArgument for an invalid
// configuration and DomainError when the mathematics breaks down (e.g.
// coinciding eigenvalues).
Certificate run(const RunConfig& config, unsigned threads = 1);

}  // namespace nhim
