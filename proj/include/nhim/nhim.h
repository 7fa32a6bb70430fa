/* Copyright 2026 The nhimcert Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the nhimcert verifier. Objects are opaque handles owned by
 * the caller and released with the matching _destroy function. Every call
 * that can fail returns an nhim_status; the message of the last failure on
 * the calling thread is available from nhim_last_error().
 */
#ifndef NHIM_NHIM_H_
#define NHIM_NHIM_H_

#include <stddef.h>

#if defined(NHIM_BUILDING_LIBRARY)
#define NHIM_API __attribute__((visibility("default")))
#else
#define NHIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nhim_status {
  NHIM_OK = 0,
  NHIM_E_INVALID_ARGUMENT = 1, /* bad parameter or configuration value */
  NHIM_E_PARSE = 2,            /* malformed configuration text */
  NHIM_E_DOMAIN = 3,           /* no rigorous answer, e.g. coinciding eigenvalues */
  NHIM_E_IO = 4,
  NHIM_E_INTERNAL = 5
} nhim_status;

typedef enum nhim_format { NHIM_FORMAT_TEXT = 0, NHIM_FORMAT_STRUCTURED = 1 } nhim_format;

typedef struct nhim_config nhim_config;
typedef struct nhim_certificate nhim_certificate;

NHIM_API const char* nhim_version(void);
/* Never NULL; empty when the last call on this thread succeeded. */
NHIM_API const char* nhim_last_error(void);

/* ---- configuration (defaults reproduce the rotating Henon example) ---- */
NHIM_API nhim_status nhim_config_create(nhim_config** out);
NHIM_API void nhim_config_destroy(nhim_config* config);
/* Replaces the configuration with the parsed `key = value` text. On a parse
 * error *error_line (if not NULL) receives the 1-based line. */
NHIM_API nhim_status nhim_config_parse(nhim_config* config, const char* text, int* error_line);
NHIM_API nhim_status nhim_config_set(nhim_config* config, const char* key, const char* value);
/* Writes a newly allocated string to *value; release with nhim_free_string. */
NHIM_API nhim_status nhim_config_get(const nhim_config* config, const char* key, char** value);
NHIM_API nhim_status nhim_config_validate(const nhim_config* config);

/* ---- running ---- */
/* Runs the configured mode. threads <= 1 runs single-threaded. */
NHIM_API nhim_status nhim_run(const nhim_config* config, unsigned threads, nhim_certificate** out);
NHIM_API void nhim_certificate_destroy(nhim_certificate* cert);
NHIM_API int nhim_certificate_certified(const nhim_certificate* cert);
NHIM_API size_t nhim_certificate_record_count(const nhim_certificate* cert);

typedef struct nhim_record {
  const char* name;     /* valid while the certificate lives */
  const char* relation; /* "<", "<=" or ">" */
  double lhs_lo, lhs_hi;
  double rhs_lo, rhs_hi;
  double slack;
  int pass;
} nhim_record;

NHIM_API nhim_status nhim_certificate_record(const nhim_certificate* cert, size_t index, nhim_record* out);
/* Renders the certificate. A NULL timestamp uses the current UTC time (or
 * SOURCE_DATE_EPOCH). Release the string with nhim_free_string. */
NHIM_API nhim_status nhim_certificate_render(const nhim_certificate* cert, nhim_format format,
                                             const char* timestamp, char** out);
/* Renders like nhim_certificate_render and writes the text to `path`. */
NHIM_API nhim_status nhim_certificate_write(const nhim_certificate* cert, nhim_format format,
                                            const char* timestamp, const char* path);
NHIM_API void nhim_free_string(char* s);

/* ---- direct checks ---- */
typedef struct nhim_derivative_bounds {
  double C, eps_c, mu, M, A_up, alpha, eps_u, eps_s, beta;
} nhim_derivative_bounds;

/* Three cone inequalities with expansion rate m; v > 0 rescales the base
 * coordinate, v == 0 checks the bounds as given. *holds is 1 when all three
 * hold, *margin receives the smallest slack. */
NHIM_API nhim_status nhim_check_cone_conditions(const nhim_derivative_bounds* bounds, double m, double v,
                                                int* holds, double* margin);
/* Smallest power of two v (up to 2^64) at which the rescaled conditions hold;
 * *found is 0 when there is none. */
NHIM_API nhim_status nhim_suggest_v(const nhim_derivative_bounds* bounds, double m, double* v, int* found);
/* Cone-containment validation of the atlas with circumference v >= 9. */
NHIM_API nhim_status nhim_validate_atlas(int v, int* valid);

#ifdef __cplusplus
}
#endif

#endif /* NHIM_NHIM_H_ */
