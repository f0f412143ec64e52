#ifndef LAPLAT_H
#define LAPLAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum LaplatStatus {
  LAPLAT_STATUS_OK = 0,
  LAPLAT_STATUS_NULL_POINTER = 1,
  LAPLAT_STATUS_INVALID_INPUT = 2,
  LAPLAT_STATUS_DISCONNECTED = 3,
  LAPLAT_STATUS_GUARD_EXCEEDED = 4,
  LAPLAT_STATUS_INTERNAL = 5,
  LAPLAT_STATUS_PANIC = 6,
} LaplatStatus;

/**
 * Opaque multigraph handle.
 */
typedef struct LaplatGraph LaplatGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *laplat_last_error_message(void);

/**
 * Parses `{"vertices": n, "edges": [[i, j, mult], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum LaplatStatus laplat_graph_from_json(const char *json, struct LaplatGraph **out);

/**
 * Builds a graph from parallel arrays of edge endpoints and
 * multiplicities.
 *
 * # Safety
 * Each array must hold `edge_count` elements (they may be null when
 * `edge_count` is 0); `out` must be writable.
 */
enum LaplatStatus laplat_graph_from_edges(size_t vertex_count,
                                          const size_t *sources,
                                          const size_t *targets,
                                          const uint32_t *multiplicities,
                                          size_t edge_count,
                                          struct LaplatGraph **out);

/**
 * Releases a graph handle. Null is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void laplat_graph_free(struct LaplatGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LaplatStatus laplat_graph_vertex_count(const struct LaplatGraph *g, size_t *out);

/**
 * Number of spanning trees as a decimal string (free with
 * `laplat_string_free`).
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LaplatStatus laplat_spanning_trees(const struct LaplatGraph *g, char **out);

/**
 * Minimum total edge count across a cut.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LaplatStatus laplat_min_cut_l1(const struct LaplatGraph *g, uint64_t *out);

/**
 * Minimum over cuts of the largest edge count into one outside vertex,
 * under the default enumeration guard.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LaplatStatus laplat_min_cut_linf(const struct LaplatGraph *g, uint64_t *out);

/**
 * Full invariant report as compact JSON (free with `laplat_string_free`).
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum LaplatStatus laplat_invariants_json(const struct LaplatGraph *g, char **out);

/**
 * Whether `config` (one entry per vertex) is equivalent to an effective
 * configuration. When it is and `representative` is not null, an
 * effective representative is written there.
 *
 * # Safety
 * `config` and `representative` (if non-null) must hold `len` elements;
 * `effective` must be writable.
 */
enum LaplatStatus laplat_effective(const struct LaplatGraph *g,
                                   const int64_t *config,
                                   size_t len,
                                   bool *effective,
                                   int64_t *representative);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void laplat_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAPLAT_H */
