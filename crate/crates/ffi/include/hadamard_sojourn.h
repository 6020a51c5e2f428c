#ifndef HADAMARD_SOJOURN_H
#define HADAMARD_SOJOURN_H

/* Generated by cbindgen from hadamard-sojourn-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every API call.
 */
typedef enum {
  /**
   * Success.
   */
  HWS_STATUS_OK = 0,
  /**
   * A verification run found a coefficient mismatch.
   */
  HWS_STATUS_MATH_MISMATCH = 1,
  /**
   * A parameter was out of range (odd horizon, zero order, ...).
   */
  HWS_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A required pointer was NULL.
   */
  HWS_STATUS_NULL_POINTER = 3,
  /**
   * A string was not valid UTF-8 or not a valid exact scalar/state.
   */
  HWS_STATUS_PARSE_ERROR = 4,
  /**
   * The library panicked; this indicates a bug.
   */
  HWS_STATUS_INTERNAL = 5,
} HwsStatus;

/**
 * Which sojourn measure to compute.
 */
typedef enum {
  /**
   * Free walk from the origin.
   */
  HWS_MEASURE_KIND_FREE_WALK = 0,
  /**
   * Bridge walk (conditioned on returning to the origin).
   */
  HWS_MEASURE_KIND_BRIDGE = 1,
  /**
   * Classical discrete arc-sine law.
   */
  HWS_MEASURE_KIND_CLASSICAL_ARCSINE = 2,
  /**
   * Classical bridge equidistribution.
   */
  HWS_MEASURE_KIND_CLASSICAL_UNIFORM = 3,
} HwsMeasureKind;

/**
 * Output format for measure tables.
 */
typedef enum {
  HWS_FORMAT_JSON = 0,
  HWS_FORMAT_CSV = 1,
} HwsFormat;

/**
 * Opaque handle to a path-sum table (time, endpoint, sojourn count).
 */
typedef struct HwsTable HwsTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Never NULL; empty
 * before the first failure. Valid until the next failing call.
 */
const char *hws_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *hws_version(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a function of this library and not freed
 * before. NULL is accepted and ignored.
 */
void hws_string_free(char *s);

/**
 * Build a path-sum table from `start` up to time `n_max`.
 *
 * # Safety
 * `out` must be a valid pointer; on `HWS_STATUS_OK` it receives a handle
 * that must be released with [`hws_table_free`].
 */
HwsStatus hws_table_new(int64_t start, uint32_t n_max, HwsTable **out);

/**
 * Release a table handle. NULL is accepted and ignored.
 *
 * # Safety
 * `table` must have come from [`hws_table_new`] and not been freed before.
 */
void hws_table_free(HwsTable *table);

/**
 * JSON matrix (exact strings) of the path-sum entry at `(n, y, k)`; the
 * zero matrix outside the light cone.
 *
 * # Safety
 * `table` must be a live handle from [`hws_table_new`]; `out` must be
 * valid and receives a string to free with [`hws_string_free`].
 */
HwsStatus hws_table_entry_json(const HwsTable *table,
                               uint32_t n,
                               int64_t y,
                               uint32_t k,
                               char **out);

/**
 * The whole table as a JSON document with rows `{n, y, k, matrix}`.
 *
 * # Safety
 * As for [`hws_table_entry_json`].
 */
HwsStatus hws_table_json(const HwsTable *table, char **out);

/**
 * Exact position distribution at time `n` as a JSON document; `state` may
 * be NULL for the symmetric state.
 *
 * # Safety
 * As for [`hws_table_entry_json`]; `state`, when non-NULL, must be a
 * NUL-terminated string.
 */
HwsStatus hws_position_distribution_json(const HwsTable *table,
                                         uint32_t n,
                                         const char *state,
                                         char **out);

/**
 * Sojourn measure table at even horizon `n`. `state` may be NULL for the
 * symmetric state and is ignored by the classical kinds.
 *
 * # Safety
 * `out` must be valid; `state`, when non-NULL, must be a NUL-terminated
 * string. Free the result with [`hws_string_free`].
 */
HwsStatus hws_measure(HwsMeasureKind kind,
                      uint32_t n,
                      const char *state,
                      HwsFormat format,
                      char **out);

/**
 * Expand the free-walk closed forms to `order` as JSON.
 *
 * # Safety
 * `out` must be valid; free the result with [`hws_string_free`].
 */
HwsStatus hws_theorem1_json(uint32_t order, char **out);

/**
 * Expand the bridge closed form to `order` as JSON.
 *
 * # Safety
 * As for [`hws_theorem1_json`].
 */
HwsStatus hws_theorem2_json(uint32_t order, char **out);

/**
 * First-return amplitudes `a_1 .. a_n_max` as JSON.
 *
 * # Safety
 * As for [`hws_theorem1_json`].
 */
HwsStatus hws_first_return_json(uint32_t n_max, char **out);

/**
 * Run the full exact cross-check suite at the given series order.
 *
 * Returns `HWS_STATUS_OK` when every comparison agrees and
 * `HWS_STATUS_MATH_MISMATCH` otherwise; `report_out` (optional, may be
 * NULL) receives the per-check report text either way.
 *
 * # Safety
 * `report_out`, when non-NULL, receives a string to free with
 * [`hws_string_free`].
 */
HwsStatus hws_verify(uint32_t order, char **report_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HADAMARD_SOJOURN_H */
