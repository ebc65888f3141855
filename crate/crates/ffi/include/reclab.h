#ifndef RECLAB_H
#define RECLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ReclabStatus {
  RECLAB_STATUS_OK = 0,
  RECLAB_STATUS_NULL_POINTER = 1,
  RECLAB_STATUS_INVALID_ARGUMENT = 2,
  RECLAB_STATUS_OUT_OF_RANGE = 3,
  RECLAB_STATUS_DOMAIN = 4,
  RECLAB_STATUS_OVERFLOW = 5,
  RECLAB_STATUS_TRUNCATION = 6,
  RECLAB_STATUS_ACCURACY = 7,
  RECLAB_STATUS_PANIC = 8,
} ReclabStatus;

/**
 * A truncated counterexample vector together with its operator.
 */
typedef struct ReclabCounterexample ReclabCounterexample;

/**
 * A finite sum of unimodular eigenvectors with orthogonal components.
 */
typedef struct ReclabEigenSum ReclabEigenSum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *reclab_version(void);

/**
 * Message of the last failure on this thread. The pointer stays valid until
 * the next failing call on the same thread.
 */
const char *reclab_last_error(void);

/**
 * Builds `y` truncated to blocks `1..=k_max`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum ReclabStatus reclab_counterexample_new(uintptr_t k_max, struct ReclabCounterexample **out);

/**
 * # Safety
 * `handle` must come from [`reclab_counterexample_new`] and not be used
 * afterwards. Null is ignored.
 */
void reclab_counterexample_free(struct ReclabCounterexample *handle);

/**
 * `||u^l y - y||^2` on the truncation; requires `1 <= power < k_max`.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum ReclabStatus reclab_counterexample_distance_sq(const struct ReclabCounterexample *handle,
                                                    uint64_t power,
                                                    double *out);

/**
 * `||u^n y - y||` on the truncation, uncertified; fails with
 * `RECLAB_STATUS_OVERFLOW` when a weight leaves the double range.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum ReclabStatus reclab_counterexample_orbit_distance(const struct ReclabCounterexample *handle,
                                                       uint64_t n,
                                                       double *out);

/**
 * Exhaustive scaled partial-sum scan for block `k` (2..=8).
 *
 * # Safety
 * Out-pointers must be valid for writes.
 */
enum ReclabStatus reclab_lemma3_check(uintptr_t k, double *max_norm, double *bound, bool *pass);

/**
 * Alternating zeta `sum (-1)^n n^-s` to `tol`.
 *
 * # Safety
 * Out-pointers must be valid for writes.
 */
enum ReclabStatus reclab_zeta_star(double re,
                                   double im,
                                   double tol,
                                   double *out_re,
                                   double *out_im);

/**
 * Riemann zeta by Euler-Maclaurin summation to `tol`.
 *
 * # Safety
 * Out-pointers must be valid for writes.
 */
enum ReclabStatus reclab_zeta(double re, double im, double tol, double *out_re, double *out_im);

/**
 * Builds a sum from `d` angles in `[0, 1)` (as doubles) and positive weights.
 * `weights` may be null for unit weights.
 *
 * # Safety
 * `angles` must point to `d` doubles, `weights` to `d` doubles or be null,
 * and `out` must be valid for writes.
 */
enum ReclabStatus reclab_eigensum_new(const double *angles,
                                      const double *weights,
                                      uintptr_t d,
                                      struct ReclabEigenSum **out);

/**
 * Same as [`reclab_eigensum_new`] with exact angles `num[j] / den[j]`.
 *
 * # Safety
 * `num` and `den` must point to `d` integers each; see [`reclab_eigensum_new`].
 */
enum ReclabStatus reclab_eigensum_new_rational(const uint64_t *num,
                                               const uint64_t *den,
                                               const double *weights,
                                               uintptr_t d,
                                               struct ReclabEigenSum **out);

/**
 * # Safety
 * `handle` must come from one of the `reclab_eigensum_new*` functions and not
 * be used afterwards. Null is ignored.
 */
void reclab_eigensum_free(struct ReclabEigenSum *handle);

/**
 * `||u^n x - x||`.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum ReclabStatus reclab_eigensum_distance(const struct ReclabEigenSum *handle,
                                           uint64_t n,
                                           double *out);

/**
 * Smallest window length that always contains a return time up to
 * `horizon`; equals `horizon` when there is none.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum ReclabStatus reclab_eigensum_uniform_gap(const struct ReclabEigenSum *handle,
                                              double epsilon,
                                              uint64_t horizon,
                                              uint64_t *out);

/**
 * Distance between iterated and directly reduced rotations at step `n`.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum ReclabStatus reclab_eigensum_conjugacy_residual(const struct ReclabEigenSum *handle,
                                                     uint64_t n,
                                                     double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECLAB_H */
