/* C interface for the sscg graph-family library. */

#ifndef SSCG_H
#define SSCG_H

/* Generated by cbindgen from crates/sscg-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Boundary-participation constraint selector.
typedef enum SscgConstraint {
  SSCG_CONSTRAINT_FREE = 0,
  SSCG_CONSTRAINT_KEEP_ZERO = 1,
  SSCG_CONSTRAINT_KEEP_ONE = 2,
  SSCG_CONSTRAINT_KEEP_TWO = 3,
  SSCG_CONSTRAINT_KEEP_FIRST_ONLY = 4,
  SSCG_CONSTRAINT_KEEP_SECOND_ONLY = 5,
} SscgConstraint;

// Graph family selector.
typedef enum SscgModel {
  SSCG_MODEL_FRACTAL = 0,
  SSCG_MODEL_NON_FRACTAL = 1,
} SscgModel;

// Optimization problem selector.
typedef enum SscgProblem {
  SSCG_PROBLEM_MATCHING = 0,
  SSCG_PROBLEM_INDEPENDENT_SET = 1,
  SSCG_PROBLEM_DOMINATING_SET = 2,
} SscgProblem;

// Status code returned by every fallible function.
typedef enum SscgStatus {
  SSCG_STATUS_OK = 0,
  SSCG_STATUS_NULL_ARGUMENT = 1,
  SSCG_STATUS_USAGE = 2,
  SSCG_STATUS_CAPABILITY = 3,
  SSCG_STATUS_RANGE = 4,
  SSCG_STATUS_NO_CLOSED_FORM = 5,
  SSCG_STATUS_PARSE = 6,
  SSCG_STATUS_IO = 7,
} SscgStatus;

// Opaque graph handle.
typedef struct SscgGraph SscgGraph;

// Opaque solve-result handle.
typedef struct SscgResult SscgResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null when the last
// call succeeded. The pointer stays valid until the next failing call on
// the same thread.
const char *sscg_last_error_message(void);

// Builds one family graph at the given level and writes an owned handle to
// `out`. `max_level` bounds the construction (pass 0 for the library
// default).
//
// # Safety
// `out` must be a valid pointer to writable memory for one pointer.
enum SscgStatus sscg_graph_build(enum SscgModel model,
                                 uint32_t level,
                                 uint32_t max_level,
                                 struct SscgGraph **out);

// Releases a graph handle. Null is ignored.
//
// # Safety
// `graph` must be null or a handle produced by [`sscg_graph_build`] that
// has not been freed yet.
void sscg_graph_free(struct SscgGraph *graph);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle from [`sscg_graph_build`].
uint64_t sscg_graph_vertices(const struct SscgGraph *graph);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `graph` must be null or a live handle from [`sscg_graph_build`].
uint64_t sscg_graph_edges(const struct SscgGraph *graph);

// Solves one problem exactly. `budget_seconds <= 0` means no time limit.
// On success writes an owned result handle to `out`.
//
// # Safety
// `graph` must be a live handle from [`sscg_graph_build`]; `out` must be a
// valid pointer to writable memory for one pointer.
enum SscgStatus sscg_solve(const struct SscgGraph *graph,
                           enum SscgProblem problem,
                           enum SscgConstraint constraint,
                           double budget_seconds,
                           struct SscgResult **out);

// Releases a result handle. Null is ignored.
//
// # Safety
// `result` must be null or a handle produced by [`sscg_solve`] that has
// not been freed yet.
void sscg_result_free(struct SscgResult *result);

// Optimum value, or -1 when the constraint is infeasible or the handle is
// null.
//
// # Safety
// `result` must be null or a live handle from [`sscg_solve`].
int64_t sscg_result_optimum(const struct SscgResult *result);

// Number of optimal structures as a decimal string, or null for a null
// handle. Release with [`sscg_string_free`].
//
// # Safety
// `result` must be null or a live handle from [`sscg_solve`].
char *sscg_result_count(const struct SscgResult *result);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by [`sscg_result_count`] that has
// not been freed yet.
void sscg_string_free(char *s);

// Headline optimum at `level` straight from the recurrences, without
// building the graph. Writes the value to `out`.
//
// # Safety
// `out` must be a valid pointer to writable memory for one `u64`.
enum SscgStatus sscg_predict_optimum(enum SscgModel model,
                                     enum SscgProblem problem,
                                     uint32_t level,
                                     uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SSCG_H */
