#ifndef POSSING_H
#define POSSING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PossingCondition {
  POSSING_CONDITION_A = 0,
  POSSING_CONDITION_AA = 1,
  POSSING_CONDITION_AC = 2,
  POSSING_CONDITION_AAC = 3,
} PossingCondition;

typedef enum PossingMode {
  POSSING_MODE_RIGHT = 0,
  POSSING_MODE_CONTACT = 1,
} PossingMode;

typedef enum PossingStatus {
  POSSING_STATUS_OK = 0,
  POSSING_STATUS_INVALID_CHARACTERISTIC = 1,
  POSSING_STATUS_PARSE = 2,
  POSSING_STATUS_INVALID_WEIGHTS = 3,
  POSSING_STATUS_INVALID_ARGUMENT = 4,
  POSSING_STATUS_RING_MISMATCH = 5,
  POSSING_STATUS_CONSTANT_TERM = 6,
  POSSING_STATUS_ZERO_POLYNOMIAL = 7,
  POSSING_STATUS_NOT_A_UNIT = 8,
  POSSING_STATUS_INFINITE = 9,
  POSSING_STATUS_CONDITION_FAILS = 10,
  POSSING_STATUS_UNSUPPORTED = 11,
  POSSING_STATUS_NULL_POINTER = 12,
  POSSING_STATUS_INVALID_UTF8 = 13,
  POSSING_STATUS_PANIC = 14,
} PossingStatus;

/**
 * Polynomial together with its variable names.
 */
typedef struct PossingPoly PossingPoly;

typedef struct PossingPolytope PossingPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *possing_last_error_message(void);

/**
 * Parses `text` over F_p (or Q when `characteristic` is 0). `vars` is a comma separated
 * list; null infers the variables from the text.
 *
 * # Safety
 * String arguments must be null or nul-terminated; `out` must be writable.
 */
enum PossingStatus possing_poly_parse(const char *text_,
                                      uint64_t characteristic,
                                      const char *vars,
                                      struct PossingPoly **out);

/**
 * # Safety
 * `h` must be null or a handle from this library that has not been freed.
 */
void possing_poly_free(struct PossingPoly *h);

/**
 * Renders the polynomial; release the string with [`possing_string_free`].
 *
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum PossingStatus possing_poly_to_string(const struct PossingPoly *h, char **out);

/**
 * # Safety
 * `s` must be null or come from this library.
 */
void possing_string_free(char *s);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum PossingStatus possing_milnor(const struct PossingPoly *h, int64_t *out);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum PossingStatus possing_tjurina(const struct PossingPoly *h, int64_t *out);

/**
 * C-polytope spanned by the Newton diagram of `f`.
 *
 * # Safety
 * `f` must be a live handle and `out` writable.
 */
enum PossingStatus possing_polytope_newton(const struct PossingPoly *f,
                                           struct PossingPolytope **out);

/**
 * C-polytope from facet weights such as `"4,6;5,5"`.
 *
 * # Safety
 * `weights` must be nul-terminated and `out` writable.
 */
enum PossingStatus possing_polytope_weights(const char *weights,
                                            size_t nvars,
                                            struct PossingPolytope **out);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
void possing_polytope_free(struct PossingPolytope *h);

/**
 * Valuation of `f`; the zero polynomial is an `Infinite` error.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum PossingStatus possing_valuation(const struct PossingPolytope *p,
                                     const struct PossingPoly *f,
                                     int64_t *out);

/**
 * # Safety
 * Handles must be live and `out` writable.
 */
enum PossingStatus possing_check_condition(const struct PossingPolytope *p,
                                           const struct PossingPoly *f,
                                           enum PossingCondition which,
                                           bool *out);

/**
 * Filtered determinacy bound.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum PossingStatus possing_determinacy(const struct PossingPolytope *p,
                                       const struct PossingPoly *f,
                                       enum PossingMode m,
                                       uint64_t *out);

/**
 * Normal form of `f`; the result is a new handle in the same variables.
 *
 * # Safety
 * Handles must be live and `out` writable.
 */
enum PossingStatus possing_normal_form(const struct PossingPolytope *p,
                                       const struct PossingPoly *f,
                                       enum PossingMode m,
                                       struct PossingPoly **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POSSING_H */
