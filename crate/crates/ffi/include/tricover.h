#ifndef TRICOVER_H
#define TRICOVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Outcome of [`tc_bound`].
 */
typedef enum {
  TC_BOUND_VERDICT_IMPOSSIBLE = 0,
  TC_BOUND_VERDICT_WITHIN_BOUND = 1,
} TcBoundVerdict;

/**
 * Result code of every fallible entry point.
 */
typedef enum {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_ARGUMENT = 1,
  TC_STATUS_INVALID_UTF8 = 2,
  TC_STATUS_PARSE = 3,
  TC_STATUS_INVALID_INPUT = 4,
  TC_STATUS_INADMISSIBLE = 5,
  TC_STATUS_INTERNAL = 6,
  TC_STATUS_PANIC = 7,
} TcStatus;

/**
 * Opaque covering handle.
 */
typedef struct TcCovering TcCovering;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next `tc_*` call on the same thread.
 */
const char *tc_last_error(void);

/**
 * Builds a construction (`"grid"`, `"cs1"`, `"cs2"` or `"plus3"`) with the
 * rational `eps`. Unless `force` is set, an eps beyond the admissible bound
 * yields `Inadmissible`.
 *
 * # Safety
 * `construction` and `eps` must be NUL-terminated strings; `out` must be a
 * valid pointer to writable storage.
 */
TcStatus tc_generate(const char *construction,
                     uint32_t n,
                     const char *eps,
                     bool force,
                     TcCovering **out);

/**
 * Parses a covering document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
TcStatus tc_covering_from_json(const char *json, TcCovering **out);

/**
 * Serializes the covering document; free the result with [`tc_string_free`].
 *
 * # Safety
 * `covering` must be a live handle; `out` must be writable.
 */
TcStatus tc_covering_to_json(const TcCovering *covering, char **out);

/**
 * Number of pieces, or 0 for a null handle.
 *
 * # Safety
 * `covering` must be null or a live handle.
 */
size_t tc_covering_piece_count(const TcCovering *covering);

/**
 * Exact coverage decision. When not covered and `witness_json` is non-null,
 * it receives `{"y", "x_lo", "x_hi"}` describing an uncovered open segment;
 * otherwise it receives NULL.
 *
 * # Safety
 * `covering` must be a live handle; `covered` must be writable;
 * `witness_json` may be null.
 */
TcStatus tc_verify(const TcCovering *covering, bool *covered, char **witness_json);

/**
 * Projection report as JSON; free with [`tc_string_free`].
 *
 * # Safety
 * `covering` must be a live handle; `out` must be writable.
 */
TcStatus tc_project_json(const TcCovering *covering, char **out);

/**
 * SVG drawing of the covering; free with [`tc_string_free`].
 *
 * # Safety
 * `covering` must be a live handle; `out` must be writable.
 */
TcStatus tc_render_svg(const TcCovering *covering, char **out);

/**
 * Decides whether the side `n + eps` triangle is coverable by
 * `n^2 + extra` unit triangles (`extra` 2 or 3). `trace_json` may be null;
 * otherwise it receives the full report as JSON.
 *
 * # Safety
 * `eps` must be a NUL-terminated string; `verdict` must be writable;
 * `trace_json` may be null.
 */
TcStatus tc_bound(uint32_t n,
                  uint32_t extra,
                  const char *eps,
                  TcBoundVerdict *verdict,
                  char **trace_json);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `covering` must be null or a handle not yet freed.
 */
void tc_covering_free(TcCovering *covering);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void tc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRICOVER_H */
