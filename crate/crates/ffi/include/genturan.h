#ifndef GENTURAN_H
#define GENTURAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GtShape {
  /**
   * Paths with `k` vertices.
   */
  GT_SHAPE_PATH = 0,
  /**
   * Cycles of length `k`.
   */
  GT_SHAPE_CYCLE = 1,
  /**
   * Cliques on `k` vertices.
   */
  GT_SHAPE_CLIQUE = 2,
} GtShape;

typedef enum GtStatus {
  GT_STATUS_OK = 0,
  GT_STATUS_NULL_POINTER = 1,
  GT_STATUS_INVALID_UTF8 = 2,
  GT_STATUS_INVALID_GRAPH6 = 3,
  GT_STATUS_PRECONDITION = 4,
  GT_STATUS_LIMIT_EXCEEDED = 5,
  GT_STATUS_INTERNAL = 6,
} GtStatus;

typedef enum GtVerdict {
  GT_VERDICT_LINEAR = 0,
  GT_VERDICT_QUADRATIC = 1,
} GtVerdict;

/**
 * Opaque graph handle.
 */
typedef struct GtGraph GtGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *gt_last_error(void);

/**
 * Parses a NUL-terminated graph6 string.
 *
 * # Safety
 * `s` must be a valid C string and `out` a writable pointer.
 */
enum GtStatus gt_graph_from_graph6(const char *s, struct GtGraph **out);

/**
 * # Safety
 * `g` must be a handle from this library or NULL, and must not be used after.
 */
void gt_graph_free(struct GtGraph *g);

/**
 * # Safety
 * `s` must be a string from this library or NULL.
 */
void gt_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle; `out` a writable pointer.
 */
enum GtStatus gt_graph_to_graph6(const struct GtGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; outputs writable.
 */
enum GtStatus gt_graph_size(const struct GtGraph *g, size_t *order, size_t *edges);

/**
 * graph6 of the canonically relabelled graph; equal strings mean isomorphic graphs.
 *
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
enum GtStatus gt_canonical_graph6(const struct GtGraph *g, char **out);

/**
 * Number of subgraphs of `host` isomorphic to `pattern`, as a decimal string.
 *
 * # Safety
 * Handles must be live; `out` writable.
 */
enum GtStatus gt_count_copies(const struct GtGraph *pattern,
                              const struct GtGraph *host,
                              char **out);

/**
 * # Safety
 * Handles must be live; `out` writable.
 */
enum GtStatus gt_is_free(const struct GtGraph *host, const struct GtGraph *forbidden, bool *out);

/**
 * Counts paths, cycles or cliques; decimal string result.
 *
 * # Safety
 * `g` must be live; `out` writable.
 */
enum GtStatus gt_count_shape(const struct GtGraph *g, enum GtShape shape, size_t k, char **out);

/**
 * The polarity-type C4-free family member for a prime power `q` with `t-1 | q-1`.
 *
 * # Safety
 * `out` writable.
 */
enum GtStatus gt_furedi(size_t q, size_t t, struct GtGraph **out);

/**
 * Balanced complete `(k-1)`-partite graph on `n` vertices.
 *
 * # Safety
 * `out` writable.
 */
enum GtStatus gt_turan(size_t n, size_t k, struct GtGraph **out);

/**
 * Whether `ex(n, C_k, F)` grows linearly or quadratically; `k >= 4`.
 *
 * # Safety
 * `f` must be live; `out` writable.
 */
enum GtStatus gt_classify(size_t k, const struct GtGraph *f, enum GtVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GENTURAN_H */
