#ifndef PERMAVOID_H
#define PERMAVOID_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum {
  PV_STATUS_OK = 0,
  PV_STATUS_NULL_POINTER = 1,
  PV_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed pattern, filter or other argument.
   */
  PV_STATUS_INVALID_ARGUMENT = 3,
  PV_STATUS_UNKNOWN_CASE = 4,
  /**
   * Series arithmetic failed (non-integral or undefined coefficient).
   */
  PV_STATUS_SERIES = 5,
  PV_STATUS_ENGINE = 6,
  PV_STATUS_OUT_OF_RANGE = 7,
  /**
   * The value does not fit the requested integer type.
   */
  PV_STATUS_OVERFLOW = 8,
  PV_STATUS_PANIC = 9,
} PvStatus;

/**
 * Opaque table of counts indexed by length.
 */
typedef struct PvCountTable PvCountTable;

/**
 * Opaque set of forbidden patterns.
 */
typedef struct PvPatternSet PvPatternSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next call into the library from the same thread.
 */
const char *pv_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pv_version(void);

/**
 * Parses a comma-separated list of patterns such as `"1342,2143,2314"`.
 *
 * # Safety
 * `text` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
 */
PvStatus pv_pattern_set_parse(const char *text, PvPatternSet **out);

/**
 * # Safety
 * `set` must be NULL or a pointer from [`pv_pattern_set_parse`] not yet freed.
 */
void pv_pattern_set_free(PvPatternSet *set);

/**
 * Writes the canonical comma-joined form of the set.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
PvStatus pv_pattern_set_to_string(const PvPatternSet *set, char **out);

/**
 * Counts avoiders of every length `0..=n_max`.
 *
 * # Safety
 * `set` must be a live handle; `out` must be writable.
 */
PvStatus pv_count_avoiders(const PvPatternSet *set, size_t n_max, PvCountTable **out);

/**
 * Counts avoiders accepted by `filter`, e.g. `"lrmax=2,start1<=n-2"`.
 *
 * # Safety
 * `set` must be a live handle, `filter` a NUL-terminated string and `out` writable.
 */
PvStatus pv_count_filtered(const PvPatternSet *set,
                           size_t n_max,
                           const char *filter,
                           PvCountTable **out);

/**
 * # Safety
 * `table` must be NULL or a live handle.
 */
void pv_count_table_free(PvCountTable *table);

/**
 * Number of entries, `n_max + 1`.
 *
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
PvStatus pv_count_table_len(const PvCountTable *table, size_t *out);

/**
 * The count at length `n` when it fits in 64 bits.
 *
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
PvStatus pv_count_table_get_u64(const PvCountTable *table, size_t n, uint64_t *out);

/**
 * Decimal counts joined by commas.
 *
 * # Safety
 * `table` must be a live handle; `out` must be writable.
 */
PvStatus pv_count_table_to_string(const PvCountTable *table, char **out);

/**
 * First `terms` coefficients of a registered case's series, comma-joined.
 *
 * # Safety
 * `out` must be writable.
 */
PvStatus pv_case_series(uint32_t case_id, size_t terms, char **out);

/**
 * Verifies one case up to `n_max`. `passed` receives 1 or 0; when `json` is
 * not NULL it receives the full report.
 *
 * # Safety
 * `passed` must be writable; `json` must be NULL or writable.
 */
PvStatus pv_verify_case(uint32_t case_id, size_t n_max, int32_t *passed, char **json);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void pv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMAVOID_H */
