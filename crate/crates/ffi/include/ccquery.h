#ifndef CCQUERY_H
#define CCQUERY_H

/* Generated by cbindgen from the ccquery-ffi sources; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CcqAlgo {
  CCQ_ALGO_ADAPTIVE = 0,
  CCQ_ALGO_TWO_ROUND = 1,
  CCQ_ALGO_BINARY_SEARCH = 2,
  CCQ_ALGO_PAIRWISE = 3,
} CcqAlgo;

typedef enum CcqFamily {
  CCQ_FAMILY_GNM = 0,
  CCQ_FAMILY_FOREST = 1,
  CCQ_FAMILY_STAR = 2,
  CCQ_FAMILY_TWO_PATH = 3,
  CCQ_FAMILY_CLIQUE_MINUS_EDGE = 4,
} CcqFamily;

typedef enum CcqStatus {
  CCQ_STATUS_OK = 0,
  CCQ_STATUS_NULL_POINTER = 1,
  CCQ_STATUS_INVALID_INPUT = 2,
  CCQ_STATUS_VERTEX_OUT_OF_RANGE = 3,
  CCQ_STATUS_BUDGET_EXCEEDED = 4,
  CCQ_STATUS_CONTRACT_VIOLATION = 5,
  CCQ_STATUS_BUFFER_TOO_SMALL = 6,
  CCQ_STATUS_INTERNAL = 7,
} CcqStatus;

/**
 * An undirected graph on vertices `0..n`.
 */
typedef struct CcqGraph CcqGraph;

/**
 * A query-counting oracle over a private copy of a graph.
 */
typedef struct CcqOracle CcqOracle;

/**
 * Outcome of one reconstruction run.
 */
typedef struct CcqResult CcqResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * A static, NUL-terminated description of `status`.
 */
const char *ccq_status_message(enum CcqStatus status);

/**
 * Builds a graph from `m` edges `(us[i], vs[i])`.
 *
 * # Safety
 * `us` and `vs` must each point to `m` values (or may be null when `m`
 * is 0); `out` must be a valid place to store a handle.
 */
enum CcqStatus ccq_graph_new(size_t n,
                             const size_t *us,
                             const size_t *vs,
                             size_t m,
                             struct CcqGraph **out);

/**
 * Generates an instance of `family`; for the two-path family the graph
 * with `m` edges of the pair is returned.
 *
 * # Safety
 * `out` must be a valid place to store a handle.
 */
enum CcqStatus ccq_graph_generate(enum CcqFamily family,
                                  size_t n,
                                  size_t m,
                                  uint64_t seed,
                                  struct CcqGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void ccq_graph_free(struct CcqGraph *g);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t ccq_graph_vertex_count(const struct CcqGraph *g);

/**
 * # Safety
 * `g` must be null or a live graph handle.
 */
size_t ccq_graph_edge_count(const struct CcqGraph *g);

/**
 * Copies the sorted edge list into `us`/`vs` (each of capacity `cap`).
 *
 * # Safety
 * `g` must be a live graph handle; `us` and `vs` must each have room for
 * `cap` values.
 */
enum CcqStatus ccq_graph_edges(const struct CcqGraph *g, size_t *us, size_t *vs, size_t cap);

/**
 * Components of the subgraph induced on `members`, without any query
 * accounting.
 *
 * # Safety
 * `g` must be a live graph handle, `members` must point to `len` values,
 * and `out` must be writable.
 */
enum CcqStatus ccq_graph_cc_count(const struct CcqGraph *g,
                                  const size_t *members,
                                  size_t len,
                                  size_t *out);

/**
 * An adaptive oracle over a copy of `g`; `budget` of 0 means unlimited.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum CcqStatus ccq_oracle_new(const struct CcqGraph *g, uint64_t budget, struct CcqOracle **out);

/**
 * # Safety
 * `o` must be null or an oracle handle not yet freed.
 */
void ccq_oracle_free(struct CcqOracle *o);

/**
 * One counted query.
 *
 * # Safety
 * `o` must be a live oracle handle, `members` must point to `len` values,
 * and `out` must be writable.
 */
enum CcqStatus ccq_oracle_query(struct CcqOracle *o,
                                const size_t *members,
                                size_t len,
                                size_t *out);

/**
 * # Safety
 * `o` must be null or a live oracle handle.
 */
uint64_t ccq_oracle_total_queries(const struct CcqOracle *o);

/**
 * Reconstructs `g` with `algo` through a fresh oracle, given the edge
 * bound `m`. Two-round runs use failure probability 0.05 per step.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum CcqStatus ccq_reconstruct(enum CcqAlgo algo,
                               const struct CcqGraph *g,
                               size_t m,
                               uint64_t seed,
                               struct CcqResult **out);

/**
 * # Safety
 * `r` must be null or a result handle not yet freed.
 */
void ccq_result_free(struct CcqResult *r);

/**
 * Whether the output equals the hidden edge set.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
bool ccq_result_success(const struct CcqResult *r);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
uint64_t ccq_result_queries(const struct CcqResult *r);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
uint64_t ccq_result_rounds(const struct CcqResult *r);

/**
 * # Safety
 * `r` must be null or a live result handle.
 */
uint32_t ccq_result_restarts(const struct CcqResult *r);

/**
 * Edges returned, 0 when the algorithm gave up.
 *
 * # Safety
 * `r` must be null or a live result handle.
 */
size_t ccq_result_edge_count(const struct CcqResult *r);

/**
 * Copies the returned edges into `us`/`vs` (each of capacity `cap`).
 *
 * # Safety
 * `r` must be a live result handle; `us` and `vs` must each have room for
 * `cap` values.
 */
enum CcqStatus ccq_result_edges(const struct CcqResult *r, size_t *us, size_t *vs, size_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CCQUERY_H */
