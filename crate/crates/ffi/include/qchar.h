#ifndef QCHAR_H
#define QCHAR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QcharStatus {
  QCHAR_STATUS_OK = 0,
  QCHAR_STATUS_NULL_POINTER = 1,
  QCHAR_STATUS_INVALID_UTF8 = 2,
  QCHAR_STATUS_SYNTAX = 3,
  QCHAR_STATUS_INVALID_ARGUMENT = 4,
  QCHAR_STATUS_UNSUPPORTED = 5,
  QCHAR_STATUS_COMPUTATION = 6,
  QCHAR_STATUS_PANIC = 7,
} QcharStatus;

/**
 * Opaque virtual bundle.
 */
typedef struct QcharBundle QcharBundle;

/**
 * Opaque Grothendieck–Witt element.
 */
typedef struct QcharGw QcharGw;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Owned by the
 * library and valid until the next failing call on the same thread.
 */
const char *qchar_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, freed once.
 */
void qchar_string_free(char *s);

/**
 * Parses a form such as `24*<-1> + 168*h`. `backend` is `q` or `fp:<p>`;
 * NULL means `q`.
 *
 * # Safety
 * Pointers must be NULL or valid; strings NUL-terminated.
 */
enum QcharStatus qchar_gw_parse(const char *expr, const char *backend_name, struct QcharGw **out);

/**
 * # Safety
 * `x` must be NULL or a handle from this library, freed once.
 */
void qchar_gw_free(struct QcharGw *x);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QcharStatus qchar_gw_add(const struct QcharGw *a,
                              const struct QcharGw *b,
                              struct QcharGw **out);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QcharStatus qchar_gw_mul(const struct QcharGw *a,
                              const struct QcharGw *b,
                              struct QcharGw **out);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QcharStatus qchar_gw_equal(const struct QcharGw *a, const struct QcharGw *b, bool *out);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum QcharStatus qchar_gw_witt_equal(const struct QcharGw *a, const struct QcharGw *b, bool *out);

/**
 * `{"backend":...,"terms":[{"d":...,"n":...}]}`.
 *
 * # Safety
 * `x` must be valid; `out` must be writable.
 */
enum QcharStatus qchar_gw_to_json(const struct QcharGw *x, char **out);

/**
 * # Safety
 * Pointers must be NULL or valid; strings NUL-terminated.
 */
enum QcharStatus qchar_bundle_parse(const char *expr, struct QcharBundle **out);

/**
 * # Safety
 * `v` must be NULL or a handle from this library, freed once.
 */
void qchar_bundle_free(struct QcharBundle *v);

/**
 * # Safety
 * `v` must be valid; `out` must be writable.
 */
enum QcharStatus qchar_bundle_rank(const struct QcharBundle *v, int64_t *out);

/**
 * Borel classes b_1..b_max_degree as JSON. NULL `ambient` means
 * HP(max_degree+1)^k; NULL `channel` means `gw`.
 *
 * # Safety
 * Pointers must be NULL or valid; strings NUL-terminated.
 */
enum QcharStatus qchar_borel_json(const struct QcharBundle *v,
                                  const char *ambient,
                                  const char *channel_name,
                                  const char *backend_name,
                                  uint32_t max_degree,
                                  char **out);

/**
 * Stable coefficient of the desuspended chi~_{2n+4}.
 *
 * # Safety
 * Pointers must be NULL or valid; strings NUL-terminated.
 */
enum QcharStatus qchar_omega_json(uint32_t n,
                                  const char *channel_name,
                                  const char *backend_name,
                                  char **out);

/**
 * psi_{2n+4} for odd n.
 *
 * # Safety
 * Pointers must be NULL or valid; strings NUL-terminated.
 */
enum QcharStatus qchar_psi_json(uint32_t n, const char *backend_name, char **out);

/**
 * Borel character components through `max_degree`.
 *
 * # Safety
 * Pointers must be NULL or valid; strings NUL-terminated.
 */
enum QcharStatus qchar_bo_json(const struct QcharBundle *v,
                               const char *ambient,
                               const char *backend_name,
                               uint32_t max_degree,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCHAR_H */
