// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nhim {

// Precondition violated by the caller (bad parameter, bad shape, m <= 1, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical operation has no rigorous answer for the given enclosure,
// e.g. division by an interval containing zero or coinciding eigenvalues.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed configuration text. Carries the 1-based line number (0 when the
// error is not tied to a line) and the offending key.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, std::string key)
      : std::runtime_error(what), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace nhim
