#ifndef GRAPHENT_H
#define GRAPHENT_H

/* Generated from the graphent-ffi crate sources; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible `graphent_*` function.
typedef enum GraphentStatus {
  // Success.
  GRAPHENT_STATUS_OK = 0,
  // A required pointer argument was NULL.
  GRAPHENT_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  GRAPHENT_STATUS_INVALID_UTF8 = 2,
  // The graph text could not be parsed.
  GRAPHENT_STATUS_PARSE_ERROR = 3,
  // An argument value was rejected (bad tolerance, horizon too small, …).
  GRAPHENT_STATUS_INVALID_ARGUMENT = 4,
  // An internal invariant failed; please report this.
  GRAPHENT_STATUS_INTERNAL = 5,
} GraphentStatus;

// Opaque handle to a parsed graph.
typedef struct GraphentGraph GraphentGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The library version as a static NUL-terminated string. Do not free.
const char *graphent_version(void);

// The message for the most recent failure on this thread, as a
// NUL-terminated string. Valid until the next `graphent_*` call on the same
// thread; never NULL. Do not free.
const char *graphent_last_error(void);

// Parse a graph from `text` (the text format or JSON, auto-detected) and
// store a new handle in `*out_graph`. The handle must be released with
// [`graphent_graph_free`].
//
// # Safety
//
// `text` must be a valid NUL-terminated string and `out_graph` a valid
// pointer.
enum GraphentStatus graphent_graph_parse(const char *text, struct GraphentGraph **out_graph);

// Release a graph handle. NULL is a no-op.
//
// # Safety
//
// `graph` must be NULL or a handle returned by [`graphent_graph_parse`]
// that has not been freed yet.
void graphent_graph_free(struct GraphentGraph *graph);

// Number of vertices.
//
// # Safety
//
// `graph` must be a live handle and `out_count` a valid pointer.
enum GraphentStatus graphent_graph_vertex_count(const struct GraphentGraph *graph,
                                                size_t *out_count);

// Number of edges.
//
// # Safety
//
// `graph` must be a live handle and `out_count` a valid pointer.
enum GraphentStatus graphent_graph_edge_count(const struct GraphentGraph *graph, size_t *out_count);

// Canonical JSON serialization of the graph into `*out_json` (free with
// [`graphent_string_free`]).
//
// # Safety
//
// `graph` must be a live handle and `out_json` a valid pointer.
enum GraphentStatus graphent_graph_to_json(const struct GraphentGraph *graph, char **out_json);

// Exact algebraic entropy of the path algebra: `log` of the spectral
// radius of the adjacency matrix, located to within `tol`.
//
// # Safety
//
// `graph` must be a live handle and `out_entropy` a valid pointer.
enum GraphentStatus graphent_entropy_path(const struct GraphentGraph *graph,
                                          double tol,
                                          double *out_entropy);

// Exact algebraic entropy of the extended-graph path algebra: `log` of the
// spectral radius of `A + Aᵀ`.
//
// # Safety
//
// `graph` must be a live handle and `out_entropy` a valid pointer.
enum GraphentStatus graphent_entropy_extended(const struct GraphentGraph *graph,
                                              double tol,
                                              double *out_entropy);

// Algebraic entropy of the Leavitt path algebra. Exact in the closed-form
// cases (`*out_exact = 1`); otherwise a finite-horizon estimate from the
// filtration sequence at `k_max` (`*out_exact = 0`). `out_exact` may be
// NULL when the flag is not wanted.
//
// # Safety
//
// `graph` must be a live handle, `out_entropy` a valid pointer, and
// `out_exact` NULL or a valid pointer.
enum GraphentStatus graphent_entropy_leavitt(const struct GraphentGraph *graph,
                                             double tol,
                                             size_t k_max,
                                             double *out_entropy,
                                             int *out_exact);

// Gelfand–Kirillov dimension of the path algebra; `-1` encodes infinity.
//
// # Safety
//
// `graph` must be a live handle and `out_gkdim` a valid pointer.
enum GraphentStatus graphent_gkdim_path(const struct GraphentGraph *graph, int64_t *out_gkdim);

// Gelfand–Kirillov dimension of the Leavitt path algebra; `-1` encodes
// infinity.
//
// # Safety
//
// `graph` must be a live handle and `out_gkdim` a valid pointer.
enum GraphentStatus graphent_gkdim_leavitt(const struct GraphentGraph *graph, int64_t *out_gkdim);

// Full analysis report (vertex census, cycles, growth triples of both
// algebras, entropy bounds) as pretty-printed JSON in `*out_json` (free
// with [`graphent_string_free`]). `digits` is the significant-digit count
// for numbers in the report (clamped to 1–15 like the CLI).
//
// # Safety
//
// `graph` must be a live handle and `out_json` a valid pointer.
enum GraphentStatus graphent_analyze_json(const struct GraphentGraph *graph,
                                          double tol,
                                          size_t k_max,
                                          uint8_t digits,
                                          char **out_json);

// Release a string returned by this library. NULL is a no-op.
//
// # Safety
//
// `s` must be NULL or a string obtained from a `graphent_*` out parameter
// that has not been freed yet.
void graphent_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* GRAPHENT_H */
