#ifndef CONTAINLAB_H
#define CONTAINLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

enum ClStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  CL_STATUS_OK = 0,
  CL_STATUS_NULL_ARGUMENT = 1,
  CL_STATUS_INVALID_UTF8 = 2,
  CL_STATUS_PARSE = 3,
  CL_STATUS_INVALID_ARGUMENT = 4,
  CL_STATUS_INTERNAL = 5,
  CL_STATUS_PANIC = 6,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum ClStatus ClStatus;
#else
typedef int32_t ClStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/*
 Outcome of a containment check; the values match the command-line exit codes.
 */
enum ClVerdict
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  CL_VERDICT_HOLDS = 0,
  CL_VERDICT_FAILS = 10,
  CL_VERDICT_BUDGET_EXCEEDED = 20,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum ClVerdict ClVerdict;
#else
typedef int32_t ClVerdict;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

/*
 A parsed configuration with memoized ideals.
 */
typedef struct ClConfig ClConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a registry name such as `dual-hesse` or `fermat:3:Fp(7)`. Checks use the
 default budgets until [`cl_config_set_budget`] is called.

 # Safety
 `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
ClStatus cl_config_parse(const char *spec, struct ClConfig **out);

/*
 Releases a handle; null is ignored.

 # Safety
 `config` must come from [`cl_config_parse`] and not be used afterwards.
 */
void cl_config_free(struct ClConfig *config);

/*
 Number of points of the configuration.

 # Safety
 `config` must be a live handle and `out` a valid pointer.
 */
ClStatus cl_config_num_points(const struct ClConfig *config, size_t *out);

/*
 The point list, one `(c0 : ... : cN) ^ m` per line.

 # Safety
 `config` must be a live handle and `out` a valid pointer.
 */
ClStatus cl_config_export(const struct ClConfig *config, char **out);

/*
 Sets the per-invocation budgets; 0 means unlimited. Memoized ideals are discarded.

 # Safety
 `config` must be a live handle.
 */
ClStatus cl_config_set_budget(struct ClConfig *config, uint64_t timeout_secs, uint64_t max_pairs);

/*
 Decides `I^(m) ⊆ M^j·I^r`. On success `verdict` holds the outcome and, when
 `json_out` is not null, it receives the verdict record as one JSON object.

 # Safety
 `config` must be a live handle, `verdict` a valid pointer, and `json_out` null or valid.
 */
ClStatus cl_check(const struct ClConfig *config,
                  uint32_t m,
                  uint32_t r,
                  uint32_t j,
                  ClVerdict *verdict,
                  char **json_out);

/*
 Releases a string returned by this library; null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void cl_string_free(char *s);

/*
 The message of the last failed call on this thread, or null. Valid until the next
 call into the library on this thread.
 */
const char *cl_last_error(void);

/*
 The library version as a static string.
 */
const char *cl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONTAINLAB_H */
