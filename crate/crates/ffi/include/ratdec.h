#ifndef RATDEC_H
#define RATDEC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which part of a decomposition to print.
 */
typedef enum RatdecPart {
  RATDEC_OUTER_NUM = 0,
  RATDEC_OUTER_DEN = 1,
  RATDEC_INNER_NUM = 2,
  RATDEC_INNER_DEN = 3,
  /**
   * `lambda_a,lambda_b`, empty when no certificate exists.
   */
  RATDEC_LAMBDAS = 4,
} RatdecPart;

/**
 * Result code of a fallible call.
 */
typedef enum RatdecStatus {
  RATDEC_OK = 0,
  /**
   * A required pointer was NULL or a string was not UTF-8.
   */
  RATDEC_INVALID_ARGUMENT = 1,
  /**
   * Malformed expression, unknown variable, zero denominator.
   */
  RATDEC_INPUT_ERROR = 2,
  /**
   * The genericity hypothesis could not be established.
   */
  RATDEC_HYPOTHESIS_FAILURE = 3,
  /**
   * Internal consistency check failed.
   */
  RATDEC_INTERNAL_ERROR = 4,
  /**
   * A panic was caught at the boundary.
   */
  RATDEC_PANIC = 5,
} RatdecStatus;

/**
 * Result of [`ratdec_decompose`].
 */
typedef struct RatdecDecomposition RatdecDecomposition;

/**
 * A reduced rational function together with its variable names.
 */
typedef struct RatdecFunction RatdecFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `num / den` over the comma separated variable list `vars`.
 *
 * # Safety
 * `vars`, `num` and `den` must be NUL-terminated strings; `out` must be a
 * valid pointer to writable storage for one handle.
 */
enum RatdecStatus ratdec_function_parse(const char *vars,
                                        const char *num,
                                        const char *den,
                                        struct RatdecFunction **out);

/**
 * # Safety
 * `f` must be NULL or a handle from [`ratdec_function_parse`] not yet freed.
 */
void ratdec_function_free(struct RatdecFunction *f);

/**
 * Degree `max(deg num, deg den)`, or 0 for NULL.
 *
 * # Safety
 * `f` must be NULL or a live handle.
 */
uint32_t ratdec_function_degree(const struct RatdecFunction *f);

/**
 * Decomposes `f = u(h)`. `seed` fixes the variable shifts tried when the
 * last variable is not generic.
 *
 * # Safety
 * `f` must be a live handle and `out` valid for one write.
 */
enum RatdecStatus ratdec_decompose(const struct RatdecFunction *f,
                                   uint32_t max_shift_retries,
                                   uint64_t seed,
                                   struct RatdecDecomposition **out);

/**
 * # Safety
 * `d` must be NULL or a handle from [`ratdec_decompose`] not yet freed.
 */
void ratdec_decomposition_free(struct RatdecDecomposition *d);

/**
 * # Safety
 * `d` must be NULL or a live handle.
 */
bool ratdec_decomposition_is_composite(const struct RatdecDecomposition *d);

/**
 * Whether `u(h)` was recomputed and found equal to the input.
 *
 * # Safety
 * `d` must be NULL or a live handle.
 */
bool ratdec_decomposition_verified(const struct RatdecDecomposition *d);

/**
 * # Safety
 * `d` must be NULL or a live handle.
 */
uint32_t ratdec_decomposition_outer_degree(const struct RatdecDecomposition *d);

/**
 * # Safety
 * `d` must be NULL or a live handle.
 */
uint32_t ratdec_decomposition_inner_degree(const struct RatdecDecomposition *d);

/**
 * Prints one part of `d` as a newly allocated string (outer parts in `T`),
 * or NULL for a NULL handle.
 *
 * # Safety
 * `d` must be NULL or a live handle. The result must be released with
 * [`ratdec_string_free`].
 */
char *ratdec_decomposition_part(const struct RatdecDecomposition *d, enum RatdecPart part);

/**
 * Message of the last failure on this thread, or NULL. Owned by the caller.
 */
char *ratdec_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void ratdec_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *ratdec_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RATDEC_H */
