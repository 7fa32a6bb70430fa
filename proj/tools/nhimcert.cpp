// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

// nhimcert: verifies the covering relations, cone conditions and region bound
// for the rotating Henon map and writes a certificate.
//
// Exit codes: 0 certified, 1 not certified, 2 invalid configuration,
// 3 mathematical inconsistency or internal error, 4 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "nhim/nhim.h"

namespace {

enum Exit { kCertified = 0, kNotCertified = 1, kInvalidConfig = 2, kInconsistent = 3, kIoError = 4 };

int exit_for(nhim_status status) {
  switch (status) {
    case NHIM_OK:
      return kCertified;
    case NHIM_E_INVALID_ARGUMENT:
    case NHIM_E_PARSE:
      return kInvalidConfig;
    case NHIM_E_IO:
      return kIoError;
    default:
      return kInconsistent;
  }
}

int report(nhim_status status, const std::string& context) {
  std::cerr << "nhimcert: " << context << nhim_last_error() << '\n';
  return exit_for(status);
}

std::string config_value(const nhim_config* config, const char* key) {
  char* raw = nullptr;
  if (nhim_config_get(config, key, &raw) != NHIM_OK) return {};
  std::string value(raw);
  nhim_free_string(raw);
  return value;
}

// NHIM_THREADS, default 1. Returns 0 for an invalid value.
unsigned thread_count() {
  const char* env = std::getenv("NHIM_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  return *end == '\0' && n > 0 && n <= 1024 ? static_cast<unsigned>(n) : 0;
}

struct ConfigHandle {
  nhim_config* ptr = nullptr;
  ~ConfigHandle() { nhim_config_destroy(ptr); }
};

struct CertificateHandle {
  nhim_certificate* ptr = nullptr;
  ~CertificateHandle() { nhim_certificate_destroy(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous covering and cone-condition verification for the rotating Henon map"};
  app.set_version_flag("--version", std::string(nhim_version()));

  std::string config_path;
  app.add_option("--config", config_path, "Configuration file with `key = value` lines");

  // Flags override the configuration file; values go through the library
  // parser unchanged so decimals keep their exact text.
  const std::vector<std::pair<std::string, std::string>> flags{
      {"mode", "henon-verify | henon-scan | cones-check | covering-check | atlas-validate"},
      {"a", "Henon parameter a"},
      {"b", "Henon parameter b"},
      {"omega", "Rotation number (decimal or `golden`)"},
      {"epsilon", "Forcing amplitude"},
      {"tau", "Frame rescaling tau"},
      {"eta", "Frame rescaling eta"},
      {"v", "Atlas circumference (0 = automatic)"},
      {"m-forward", "Cone expansion rate for the map"},
      {"m-backward", "Cone expansion rate for the inverse"},
      {"enclosure", "printed | direct"},
      {"out", "Certificate path (default: stdout)"},
      {"format", "text | structured"}};
  std::vector<std::string> values(flags.size());
  std::vector<CLI::Option*> options;
  for (std::size_t k = 0; k < flags.size(); ++k) {
    options.push_back(app.add_option("--" + flags[k].first, values[k], flags[k].second));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kCertified : kInvalidConfig;
  }

  ConfigHandle config;
  if (nhim_status s = nhim_config_create(&config.ptr); s != NHIM_OK) return report(s, "");

  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "nhimcert: cannot read configuration file '" << config_path << "'\n";
      return kIoError;
    }
    std::ostringstream text;
    text << in.rdbuf();
    int line = 0;
    if (nhim_status s = nhim_config_parse(config.ptr, text.str().c_str(), &line); s != NHIM_OK) {
      return report(s, config_path + ": ");
    }
  }
  for (std::size_t k = 0; k < flags.size(); ++k) {
    if (options[k]->count() == 0) continue;
    if (nhim_status s = nhim_config_set(config.ptr, flags[k].first.c_str(), values[k].c_str()); s != NHIM_OK) {
      return report(s, "--" + flags[k].first + ": ");
    }
  }
  if (nhim_status s = nhim_config_validate(config.ptr); s != NHIM_OK) return report(s, "invalid configuration: ");

  const unsigned threads = thread_count();
  if (threads == 0) {
    std::cerr << "nhimcert: NHIM_THREADS must be an integer in 1..1024\n";
    return kInvalidConfig;
  }

  CertificateHandle cert;
  if (nhim_status s = nhim_run(config.ptr, threads, &cert.ptr); s != NHIM_OK) return report(s, "");

  const nhim_format format =
      config_value(config.ptr, "format") == "structured" ? NHIM_FORMAT_STRUCTURED : NHIM_FORMAT_TEXT;
  const std::string out = config_value(config.ptr, "out");
  const bool certified = nhim_certificate_certified(cert.ptr) != 0;
  if (out.empty()) {
    char* text = nullptr;
    if (nhim_status s = nhim_certificate_render(cert.ptr, format, nullptr, &text); s != NHIM_OK) return report(s, "");
    std::cout << text;
    nhim_free_string(text);
  } else {
    if (nhim_status s = nhim_certificate_write(cert.ptr, format, nullptr, out.c_str()); s != NHIM_OK) {
      return report(s, "");
    }
    std::cout << "certificate written to " << out << ": " << (certified ? "certified" : "not certified") << '\n';
  }
  return certified ? kCertified : kNotCertified;
}
