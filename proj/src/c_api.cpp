// Copyright 2026 The nhimcert Authors
// SPDX-License-Identifier: Apache-2.0

#include "nhim/nhim.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "nhim/atlas.hpp"
#include "nhim/certificate.hpp"
#include "nhim/cone.hpp"
#include "nhim/config.hpp"
#include "nhim/error.hpp"

struct nhim_config {
  nhim::RunConfig config;
};

struct nhim_certificate {
  nhim::Certificate cert;
  std::vector<std::string> relations;
};

namespace {

thread_local std::string last_error;

nhim_status fail(nhim_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs f, mapping exceptions to status codes.
template <class F>
nhim_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const nhim::ParseError& e) {
    return fail(NHIM_E_PARSE, e.what());
  } catch (const nhim::InvalidArgument& e) {
    return fail(NHIM_E_INVALID_ARGUMENT, e.what());
  } catch (const nhim::DomainError& e) {
    return fail(NHIM_E_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NHIM_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NHIM_E_INTERNAL, e.what());
  } catch (...) {
    return fail(NHIM_E_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nhim::DerivativeBounds to_bounds(const nhim_derivative_bounds& b) {
  return {b.C, b.eps_c, b.mu, b.M, b.A_up, b.alpha, b.eps_u, b.eps_s, b.beta};
}

std::string timestamp_or_now(const char* timestamp) {
  return timestamp != nullptr ? std::string(timestamp) : nhim::current_timestamp();
}

nhim::OutputFormat to_format(nhim_format f) {
  return f == NHIM_FORMAT_STRUCTURED ? nhim::OutputFormat::structured : nhim::OutputFormat::text;
}

}  // namespace

extern "C" {

NHIM_API const char* nhim_version(void) {
  static const std::string version = nhim::version_string();
  return version.c_str();
}

NHIM_API const char* nhim_last_error(void) { return last_error.c_str(); }

NHIM_API nhim_status nhim_config_create(nhim_config** out) {
  if (out == nullptr) return fail(NHIM_E_INVALID_ARGUMENT, "output pointer is NULL");
  return guarded([&] {
    *out = new nhim_config{};
    return NHIM_OK;
  });
}

NHIM_API void nhim_config_destroy(nhim_config* config) { delete config; }

NHIM_API nhim_status nhim_config_parse(nhim_config* config, const char* text, int* error_line) {
  if (config == nullptr || text == nullptr) return fail(NHIM_E_INVALID_ARGUMENT, "config or text is NULL");
  if (error_line != nullptr) *error_line = 0;
  return guarded([&] {
    try {
      config->config = nhim::parse_config(text);
    } catch (const nhim::ParseError& e) {
      if (error_line != nullptr) *error_line = e.line();
      throw;
    }
    return NHIM_OK;
  });
}

NHIM_API nhim_status nhim_config_set(nhim_config* config, const char* key, const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    return fail(NHIM_E_INVALID_ARGUMENT, "config, key or value is NULL");
  }
  return guarded([&] {
    config->config.set(key, value);
    return NHIM_OK;
  });
}

NHIM_API nhim_status nhim_config_get(const nhim_config* config, const char* key, char** value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    return fail(NHIM_E_INVALID_ARGUMENT, "config, key or output is NULL");
  }
  return guarded([&] {
    *value = copy_string(config->config.get(key));
    return NHIM_OK;
  });
}

NHIM_API nhim_status nhim_config_validate(const nhim_config* config) {
  if (config == nullptr) return fail(NHIM_E_INVALID_ARGUMENT, "config is NULL");
  return guarded([&] {
    config->config.validate();
    return NHIM_OK;
  });
}

NHIM_API nhim_status nhim_run(const nhim_config* config, unsigned threads, nhim_certificate** out) {
  if (config == nullptr || out == nullptr) return fail(NHIM_E_INVALID_ARGUMENT, "config or output is NULL");
  *out = nullptr;
  return guarded([&] {
    auto cert = std::make_unique<nhim_certificate>();
    cert->cert = nhim::run(config->config, threads);
    for (const auto& r : cert->cert.records) {
      cert->relations.push_back(std::string(1, r.check.relation) + (r.check.or_equal ? "=" : ""));
    }
    *out = cert.release();
    return NHIM_OK;
  });
}

NHIM_API void nhim_certificate_destroy(nhim_certificate* cert) { delete cert; }

NHIM_API int nhim_certificate_certified(const nhim_certificate* cert) {
  return cert != nullptr && cert->cert.certified() ? 1 : 0;
}

NHIM_API size_t nhim_certificate_record_count(const nhim_certificate* cert) {
  return cert == nullptr ? 0 : cert->cert.records.size();
}

NHIM_API nhim_status nhim_certificate_record(const nhim_certificate* cert, size_t index, nhim_record* out) {
  if (cert == nullptr || out == nullptr) return fail(NHIM_E_INVALID_ARGUMENT, "certificate or output is NULL");
  if (index >= cert->cert.records.size()) {
    return fail(NHIM_E_INVALID_ARGUMENT, "record index " + std::to_string(index) + " out of range");
  }
  const auto& r = cert->cert.records[index];
  *out = {r.name.c_str(),  cert->relations[index].c_str(), r.check.lhs.lo(), r.check.lhs.hi(),
          r.check.rhs.lo(), r.check.rhs.hi(),             r.check.slack,    r.check.holds ? 1 : 0};
  last_error.clear();
  return NHIM_OK;
}

NHIM_API nhim_status nhim_certificate_render(const nhim_certificate* cert, nhim_format format, const char* timestamp,
                                             char** out) {
  if (cert == nullptr || out == nullptr) return fail(NHIM_E_INVALID_ARGUMENT, "certificate or output is NULL");
  return guarded([&] {
    *out = copy_string(nhim::render(cert->cert, to_format(format), timestamp_or_now(timestamp)));
    return NHIM_OK;
  });
}

NHIM_API nhim_status nhim_certificate_write(const nhim_certificate* cert, nhim_format format, const char* timestamp,
                                            const char* path) {
  if (cert == nullptr || path == nullptr) return fail(NHIM_E_INVALID_ARGUMENT, "certificate or path is NULL");
  return guarded([&] {
    const std::string text = nhim::render(cert->cert, to_format(format), timestamp_or_now(timestamp));
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) return fail(NHIM_E_IO, std::string("cannot open '") + path + "' for writing");
    os << text;
    os.close();
    if (!os) return fail(NHIM_E_IO, std::string("failed writing '") + path + "'");
    return NHIM_OK;
  });
}

NHIM_API void nhim_free_string(char* s) { std::free(s); }

NHIM_API nhim_status nhim_check_cone_conditions(const nhim_derivative_bounds* bounds, double m, double v, int* holds,
                                                double* margin) {
  if (bounds == nullptr || holds == nullptr) return fail(NHIM_E_INVALID_ARGUMENT, "bounds or output is NULL");
  return guarded([&] {
    const nhim::DerivativeBounds b = to_bounds(*bounds);
    const nhim::ConeVerdict verdict =
        v == 0.0 ? nhim::check_cone_conditions(b, m) : nhim::check_cone_conditions_rescaled(b, m, v);
    *holds = verdict.holds ? 1 : 0;
    if (margin != nullptr) *margin = verdict.margin;
    return NHIM_OK;
  });
}

NHIM_API nhim_status nhim_suggest_v(const nhim_derivative_bounds* bounds, double m, double* v, int* found) {
  if (bounds == nullptr || v == nullptr || found == nullptr) {
    return fail(NHIM_E_INVALID_ARGUMENT, "bounds or output is NULL");
  }
  return guarded([&] {
    const auto suggestion = nhim::suggest_v(to_bounds(*bounds), m);
    *found = suggestion ? 1 : 0;
    *v = suggestion.value_or(0.0);
    return NHIM_OK;
  });
}

NHIM_API nhim_status nhim_validate_atlas(int v, int* valid) {
  if (valid == nullptr) return fail(NHIM_E_INVALID_ARGUMENT, "output is NULL");
  return guarded([&] {
    *valid = nhim::validate_cone_containment(nhim::build_atlas(v)) ? 1 : 0;
    return NHIM_OK;
  });
}

}  // extern "C"
