#ifndef QNETCAP_H
#define QNETCAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum QncStatus {
  QNC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  QNC_STATUS_NULL_POINTER = 1,
  /**
   * Bad argument, schema or dimension.
   */
  QNC_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A numerical invariant failed.
   */
  QNC_STATUS_NUMERICAL = 3,
  /**
   * String argument was not valid UTF-8.
   */
  QNC_STATUS_UTF8 = 4,
  /**
   * Index out of range.
   */
  QNC_STATUS_OUT_OF_RANGE = 5,
  QNC_STATUS_PANIC = 6,
} QncStatus;

/**
 * Single-letter detection strategy for bosonic capacities.
 */
typedef enum QncDetection {
  QNC_DETECTION_HOMODYNE = 0,
  QNC_DETECTION_HETERODYNE = 1,
  QNC_DETECTION_JOINT = 2,
} QncDetection;

/**
 * Opaque classical-quantum channel.
 */
typedef struct QncChannel QncChannel;

/**
 * Opaque two-dimensional half-space region.
 */
typedef struct QncRegion QncRegion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *qnc_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void qnc_string_free(char *s);

/**
 * Builds a named builtin channel (`bb84_p2p`, `bb84_qmac`, `bb84_ic`,
 * `theta_swap`).
 *
 * # Safety
 * `name` must be a NUL-terminated string, `params` must point to
 * `n_params` doubles (or be null when `n_params` is 0) and `out` must be
 * writable.
 */
enum QncStatus qnc_channel_builtin(const char *name,
                                   const double *params,
                                   size_t n_params,
                                   struct QncChannel **out);

/**
 * Parses a channel from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum QncStatus qnc_channel_from_json(const char *json, struct QncChannel **out);

/**
 * # Safety
 * `ch` must come from this library and not be freed twice. Null is ignored.
 */
void qnc_channel_free(struct QncChannel *ch);

/**
 * Number of classical inputs of the channel.
 *
 * # Safety
 * `ch` must be a live channel handle and `out` writable.
 */
enum QncStatus qnc_channel_num_inputs(const struct QncChannel *ch, size_t *out);

/**
 * Holevo capacity of a single-input channel, maximized over a simplex
 * grid of `grid` points per edge and refined locally.
 *
 * # Safety
 * `ch` must be a live channel handle and `capacity` writable. `argmax`
 * may be null; otherwise it must hold `argmax_len` doubles, which must
 * equal the input alphabet size.
 */
enum QncStatus qnc_holevo_capacity(const struct QncChannel *ch,
                                   size_t grid,
                                   double *capacity,
                                   double *argmax,
                                   size_t argmax_len);

/**
 * Multiple-access region of a two-input channel under uniform inputs.
 *
 * # Safety
 * `ch` must be a live channel handle and `out` writable.
 */
enum QncStatus qnc_mac_region_uniform(const struct QncChannel *ch, struct QncRegion **out);

/**
 * # Safety
 * `r` must come from this library and not be freed twice. Null is ignored.
 */
void qnc_region_free(struct QncRegion *r);

/**
 * Number of coordinates of the region.
 *
 * # Safety
 * `r` must be a live region handle and `out` writable.
 */
enum QncStatus qnc_region_dim(const struct QncRegion *r, size_t *out);

/**
 * Number of stored inequalities `c · x ≤ b`, excluding nonnegativity.
 *
 * # Safety
 * `r` must be a live region handle and `out` writable.
 */
enum QncStatus qnc_region_num_inequalities(const struct QncRegion *r, size_t *out);

/**
 * Copies inequality `index` into `coeffs` (length `dim`) and `bound`.
 *
 * # Safety
 * `r` must be a live region handle, `coeffs` must hold `dim` doubles and
 * `bound` must be writable.
 */
enum QncStatus qnc_region_inequality(const struct QncRegion *r,
                                     size_t index,
                                     double *coeffs,
                                     size_t dim,
                                     double *bound);

/**
 * Membership of `point` (length `dim`) with tolerance `tol`.
 *
 * # Safety
 * `r` must be a live region handle, `point` must hold `dim` doubles and
 * `inside` must be writable.
 */
enum QncStatus qnc_region_contains(const struct QncRegion *r,
                                   const double *point,
                                   size_t dim,
                                   double tol,
                                   bool *inside);

/**
 * `max c · x` over the region. Writes infinity for unbounded directions.
 *
 * # Safety
 * `r` must be a live region handle, `direction` must hold `dim` doubles
 * and `value` must be writable.
 */
enum QncStatus qnc_region_support(const struct QncRegion *r,
                                  const double *direction,
                                  size_t dim,
                                  double *value);

/**
 * JSON form of the region. Free the result with [`qnc_string_free`].
 *
 * # Safety
 * `r` must be a live region handle and `out` writable.
 */
enum QncStatus qnc_region_to_json(const struct QncRegion *r, char **out);

/**
 * Capacity of a pure-loss thermal-noise channel with transmissivity `eta`,
 * mean signal photons `ns` and thermal photons `nb`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QncStatus qnc_bosonic_capacity(enum QncDetection mode,
                                    double eta,
                                    double ns,
                                    double nb,
                                    double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QNETCAP_H */
