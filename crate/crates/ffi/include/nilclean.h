#ifndef NILCLEAN_H
#define NILCLEAN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every exported function.
 */
typedef enum NcStatus {
  NC_STATUS_OK = 0,
  NC_STATUS_NULL_POINTER = 1,
  NC_STATUS_INVALID_UTF8 = 2,
  NC_STATUS_PARSE = 3,
  NC_STATUS_BAD_PARAMETER = 4,
  NC_STATUS_OUT_OF_RANGE = 5,
  NC_STATUS_CAP_EXCEEDED = 6,
  NC_STATUS_RING_MISMATCH = 7,
  NC_STATUS_NOT_AN_IDEAL = 8,
  NC_STATUS_PRECONDITION_VIOLATED = 9,
  NC_STATUS_AXIOM_FAILURE = 10,
  /**
   * The output buffer is too small; the required length was written.
   */
  NC_STATUS_BUFFER_TOO_SMALL = 11,
  /**
   * A theorem check found a counterexample; the report is still returned.
   */
  NC_STATUS_COUNTEREXAMPLE = 12,
  NC_STATUS_INTERNAL = 13,
  NC_STATUS_PANIC = 14,
} NcStatus;

/**
 * Opaque ideal handle.
 */
typedef struct NcIdeal NcIdeal;

/**
 * Opaque ring handle.
 */
typedef struct NcRing NcRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *nc_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void nc_string_free(char *s);

/**
 * Builds a ring from a spec string such as `Z6`, `Z4xZ3` or `T2(Z4)`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum NcStatus nc_ring_from_spec(const char *spec, size_t order_cap, struct NcRing **out);

/**
 * Builds a ring from a JSON Cayley table `{order, add, mul, zero, one}`
 * after exhaustive axiom verification.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum NcStatus nc_ring_from_table_json(const char *json, struct NcRing **out);

/**
 * # Safety
 * `ring` must come from this library and not have been freed. Null is ignored.
 */
void nc_ring_free(struct NcRing *ring);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_ring_order(const struct NcRing *ring, size_t *out);

/**
 * Canonical spec of the ring; free with `nc_string_free`.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_ring_label(const struct NcRing *ring, char **out);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_ring_add(const struct NcRing *ring, size_t x, size_t y, size_t *out);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_ring_mul(const struct NcRing *ring, size_t x, size_t y, size_t *out);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_ring_neg(const struct NcRing *ring, size_t x, size_t *out);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_ring_is_commutative(const struct NcRing *ring, bool *out);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_ring_is_nil_clean(const struct NcRing *ring, bool *out);

/**
 * Nilpotency index of `x`, or 0 when `x` is not nilpotent.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_ring_nil_index(const struct NcRing *ring, size_t x, uint32_t *out);

/**
 * Lifts `a` with `a - a^2` nilpotent to an idempotent.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_lift_idempotent(const struct NcRing *ring, size_t a, size_t *out);

/**
 * All decompositions of `x` as JSON; `kind` is `clean` or `nil-clean`.
 * Free the result with `nc_string_free`.
 *
 * # Safety
 * Handles and strings must be valid; `out` must be writable.
 */
enum NcStatus nc_decompose_json(const struct NcRing *ring, size_t x, const char *kind, char **out);

/**
 * The two-sided ideal generated by `gens[0..n]`.
 *
 * # Safety
 * `gens` must point to `n` readable values (or be null with `n == 0`).
 */
enum NcStatus nc_ideal_generated(const struct NcRing *ring,
                                 const size_t *gens,
                                 size_t n,
                                 struct NcIdeal **out);

/**
 * # Safety
 * `ideal` must come from this library and not have been freed. Null is ignored.
 */
void nc_ideal_free(struct NcIdeal *ideal);

/**
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum NcStatus nc_ideal_len(const struct NcIdeal *ideal, size_t *out);

/**
 * Copies the ascending member indices into `buf`. When `cap` is too small
 * nothing is copied, `written` receives the required length and the status
 * is `NC_STATUS_BUFFER_TOO_SMALL`.
 *
 * # Safety
 * `buf` must have room for `cap` values; `written` must be writable.
 */
enum NcStatus nc_ideal_members(const struct NcIdeal *ideal,
                               size_t *buf,
                               size_t cap,
                               size_t *written);

/**
 * Tests an ideal property: `clean`, `nil-clean`, `strongly-nil-clean`,
 * `uniquely-nil-clean`, `uniquely-strongly-nil-clean`, `nil`, ...
 *
 * # Safety
 * Handles and strings must be valid; `out` must be writable.
 */
enum NcStatus nc_ideal_check(const struct NcIdeal *ideal, const char *property, bool *out);

/**
 * Runs theorem checks over the default family and returns the JSON report.
 * `ids` may be null (with `n_ids == 0`) to run every check. The status is
 * `NC_STATUS_COUNTEREXAMPLE` when any check fails; the report is still set.
 *
 * # Safety
 * `ids` must point to `n_ids` NUL-terminated strings; `out` must be writable.
 */
enum NcStatus nc_theorems_json(const char *const *ids, size_t n_ids, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NILCLEAN_H */
