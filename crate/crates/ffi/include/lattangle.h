#ifndef LATTANGLE_H
#define LATTANGLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes.
typedef enum LaStatus {
  LA_STATUS_OK = 0,
  LA_STATUS_NULL_POINTER = 1,
  LA_STATUS_INVALID_UTF8 = 2,
  LA_STATUS_PARSE = 3,
  LA_STATUS_INVALID = 4,
  LA_STATUS_PRECONDITION = 5,
  LA_STATUS_NOT_A_SOLUTION = 6,
  LA_STATUS_DEGENERATE = 7,
  LA_STATUS_ARITHMETIC = 8,
  LA_STATUS_ORDER_CAP = 9,
  LA_STATUS_USAGE = 10,
  LA_STATUS_PANIC = 11,
} LaStatus;

// A configuration (case, rational parameters, three roots of unity).
typedef struct LaConfig LaConfig;

// An element of a cyclotomic field.
typedef struct LaCyclo LaCyclo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The last error message on this thread, or null. Valid until the next call on this thread.
const char *la_last_error(void);

// Library version as a static NUL-terminated string.
const char *la_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library and not yet freed.
void la_string_free(char *s);

// Parses `{"order": n, "coords": ["p/q", ...]}` into a cyclotomic handle.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum LaStatus la_cyclo_from_json(const char *json, struct LaCyclo **out);

// The root of unity `e^(2πi k/n)`.
//
// # Safety
// `out` must be writable.
enum LaStatus la_cyclo_root(int64_t k, uint64_t n, struct LaCyclo **out);

// Serializes a cyclotomic handle to JSON.
//
// # Safety
// `c` must be a live handle; `out` must be writable.
enum LaStatus la_cyclo_to_json(const struct LaCyclo *c, char **out);

// Approximate real and imaginary parts.
//
// # Safety
// `c` must be a live handle; `re`, `im` must be writable.
enum LaStatus la_cyclo_approx(const struct LaCyclo *c, double *re, double *im);

// `a * b` in a common field.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum LaStatus la_cyclo_mul(const struct LaCyclo *a, const struct LaCyclo *b, struct LaCyclo **out);

// Exact equality; writes 1 or 0.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum LaStatus la_cyclo_equal(const struct LaCyclo *a, const struct LaCyclo *b, int32_t *out);

// # Safety
// `c` must be null or a live handle, not used afterwards.
void la_cyclo_free(struct LaCyclo *c);

// Parses `{"caseId": "C4"|"C32"|"C222", "params": [...], "roots": ["k/n", ...]}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum LaStatus la_config_from_json(const char *json, struct LaConfig **out);

// The eliminant of the configuration.
//
// # Safety
// `cfg` must be a live handle; `out` must be writable.
enum LaStatus la_config_eliminant(const struct LaConfig *cfg, struct LaCyclo **out);

// τ in the upper half plane for a configuration whose eliminant vanishes.
// Fails with `LA_STATUS_NOT_A_SOLUTION` otherwise.
//
// # Safety
// `cfg` must be a live handle; `out` must be writable.
enum LaStatus la_config_tau(const struct LaConfig *cfg, struct LaCyclo **out);

// # Safety
// `cfg` must be null or a live handle, not used afterwards.
void la_config_free(struct LaConfig *cfg);

// Does the angle from `τ + b0` to `τ + b1` have squared argument `e^(2πi k/n)`?
// `b0`, `b1` are rationals such as `"-1/2"`, or `"inf"` for the vector 1. Writes 1 or 0.
//
// # Safety
// `tau` must be a live handle, `b0`, `b1` NUL-terminated strings, `out` writable.
enum LaStatus la_verify_angle(const struct LaCyclo *tau,
                              const char *b0,
                              const char *b1,
                              int64_t k,
                              uint64_t n,
                              int32_t *out);

// The order constant and the angle-denominator bound as decimal strings.
//
// # Safety
// `n0`, `bound` must be writable.
enum LaStatus la_constants(char **n0, char **bound);

// Runs a command-line invocation given as a JSON array of arguments (without the program
// name), e.g. `["search","case4","--orders","div:30","--expect","paper"]`, and returns the
// JSON report. `exit_code` receives what the executable would exit with (0 or 1); usage
// errors return `LA_STATUS_USAGE`.
//
// # Safety
// `args_json` must be a NUL-terminated string; `out`, `exit_code` must be writable.
enum LaStatus la_run(const char *args_json, char **out, int32_t *exit_code);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LATTANGLE_H */
