#ifndef DARBOUX_H
#define DARBOUX_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DarbouxStatus {
  DARBOUX_STATUS_OK = 0,
  DARBOUX_STATUS_NULL_POINTER = 1,
  DARBOUX_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The selection fails the Krein condition or has a noded Wronskian.
   */
  DARBOUX_STATUS_INADMISSIBLE = 3,
  /**
   * Grid pole, non-convergence or a failed internal consistency check.
   */
  DARBOUX_STATUS_NUMERIC = 4,
  DARBOUX_STATUS_INTERNAL = 5,
  DARBOUX_STATUS_PANIC = 6,
} DarbouxStatus;

/**
 * A built transformation together with its base model.
 */
typedef struct DarbouxTransform DarbouxTransform;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *darboux_last_error(void);

/**
 * Integer Krein scan. Writes whether the selection is admissible and, if
 * not, the first failing `k` (otherwise `u32::MAX`).
 *
 * # Safety
 * `levels` must point to `len` values; out pointers must be writable.
 */
enum DarbouxStatus darboux_krein_check(const uint32_t *levels,
                                       size_t len,
                                       bool *out_admissible,
                                       uint32_t *out_failing_k);

/**
 * Builds the transformation deleting `levels` from `model` (null means
 * `"oscillator"`).
 *
 * # Safety
 * `model` must be null or a NUL-terminated string; `levels` must point to
 * `len` values; `out` must be writable.
 */
enum DarbouxStatus darboux_transform_new(const char *model,
                                         const uint32_t *levels,
                                         size_t len,
                                         struct DarbouxTransform **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `handle` must be null or a handle not yet freed.
 */
void darboux_transform_free(struct DarbouxTransform *handle);

/**
 * # Safety
 * `handle` must be live; `out` writable.
 */
enum DarbouxStatus darboux_transform_order(const struct DarbouxTransform *handle, size_t *out);

/**
 * Original and transformed potentials at `x`.
 *
 * # Safety
 * `handle` must be live; out pointers writable.
 */
enum DarbouxStatus darboux_transform_potential(const struct DarbouxTransform *handle,
                                               double x,
                                               double *out_v0,
                                               double *out_vn);

/**
 * Unit-normalized partner eigenfunction `psi_n(x)` of the transformed
 * Hamiltonian. Deleted levels are an invalid argument.
 *
 * # Safety
 * `handle` must be live; `out` writable.
 */
enum DarbouxStatus darboux_transform_eigenfunction(const struct DarbouxTransform *handle,
                                                   uint32_t level,
                                                   double x,
                                                   double *out);

/**
 * Lowest `count` eigenvalues of the finite-difference transformed
 * Hamiltonian on `[x_min, x_max]` with `points` grid points.
 *
 * # Safety
 * `handle` must be live; `out` must have room for `count` values.
 */
enum DarbouxStatus darboux_transform_spectrum(const struct DarbouxTransform *handle,
                                              double x_min,
                                              double x_max,
                                              size_t points,
                                              size_t count,
                                              double *out);

/**
 * Exact coefficients as JSON. Free the string with [`darboux_string_free`].
 *
 * # Safety
 * `handle` must be live; `out` writable.
 */
enum DarbouxStatus darboux_transform_to_json(const struct DarbouxTransform *handle, char **out);

/**
 * Runs the verification suite on the reference grid. `out_json` may be
 * null; otherwise it receives the report.
 *
 * # Safety
 * `handle` must be live; `out_passed` writable; `out_json` null or writable.
 */
enum DarbouxStatus darboux_transform_verify(const struct DarbouxTransform *handle,
                                            uint32_t n_max,
                                            bool parallel,
                                            bool *out_passed,
                                            char **out_json);

/**
 * SUSY doublet/singlet classification of levels `0..=n_max` as JSON.
 *
 * # Safety
 * `handle` must be live; `out` writable.
 */
enum DarbouxStatus darboux_transform_classify_json(const struct DarbouxTransform *handle,
                                                   uint32_t n_max,
                                                   char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void darboux_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DARBOUX_H */
