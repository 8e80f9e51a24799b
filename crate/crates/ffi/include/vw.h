#ifndef VW_H
#define VW_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum {
  VW_STATUS_OK = 0,
  VW_STATUS_NULL_POINTER = 1,
  VW_STATUS_INVALID_ARGUMENT = 2,
  VW_STATUS_PARSE = 3,
  VW_STATUS_INVALID_DIAGRAM = 4,
  VW_STATUS_RESOURCE_LIMIT = 5,
  /**
   * A value does not fit the C integer type requested.
   */
  VW_STATUS_OVERFLOW = 6,
  VW_STATUS_INTERNAL = 7,
} VwStatus;

typedef enum {
  VW_PARITY_ODD = 0,
  VW_PARITY_EVEN = 1,
} VwParity;

/**
 * A parsed, validated diagram.
 */
typedef struct VwDiagram VwDiagram;

/**
 * A homology engine with its caches; not thread-safe, one per thread.
 */
typedef struct VwEngine VwEngine;

/**
 * A homology group over `Z`, or a dimension over a field (no torsion).
 */
typedef struct VwGroup VwGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. Valid until the
 * next `vw_*` call on the same thread.
 */
const char *vw_last_error_message(void);

const char *vw_version(void);

/**
 * Parses the text form `n;chords=a-b,...;bottom=...;top=...`.
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` a writable pointer.
 */
VwStatus vw_diagram_parse(const char *input, VwDiagram **out);

/**
 * # Safety
 * `d` must be null or a handle from `vw_diagram_parse` not yet freed.
 */
void vw_diagram_free(VwDiagram *d);

/**
 * Canonical text form; release with `vw_string_free`. Null on failure.
 *
 * # Safety
 * `d` must be a live diagram handle.
 */
char *vw_diagram_serialize(const VwDiagram *d);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void vw_string_free(char *s);

/**
 * Complexity `i` and number of distinct points `j`.
 *
 * # Safety
 * `d` must be a live diagram handle, `i` and `j` writable.
 */
VwStatus vw_diagram_bigrading(const VwDiagram *d, size_t *i, size_t *j);

/**
 * `max_slice` caps basis sizes; 0 selects the default.
 */
VwEngine *vw_engine_new(size_t max_slice);

/**
 * # Safety
 * `e` must be null or a handle from `vw_engine_new` not yet freed.
 */
void vw_engine_free(VwEngine *e);

/**
 * `H_(i,j)` of a complex (`"Tss"`, `"Tss_h"`, `"Ts"`, `"T"`, `"T0"`,
 * `"Z"`) over a ring (`"Z"`, `"Q"`, `"Fp:<p>"`). With `dual` set, the
 * homology of the transposed differentials.
 *
 * # Safety
 * `engine` must be live, `complex` and `ring` NUL-terminated, `out`
 * writable.
 */
VwStatus vw_homology(VwEngine *engine,
                     const char *complex,
                     VwParity parity,
                     size_t i,
                     size_t j,
                     const char *ring,
                     bool dual,
                     VwGroup **out);

/**
 * # Safety
 * `g` must be null or a group handle not yet freed.
 */
void vw_group_free(VwGroup *g);

/**
 * Free rank over `Z`, dimension over a field. Zero for a null handle.
 *
 * # Safety
 * `g` must be null or a live group handle.
 */
size_t vw_group_free_rank(const VwGroup *g);

/**
 * Number of invariant factors greater than one.
 *
 * # Safety
 * `g` must be null or a live group handle.
 */
size_t vw_group_torsion_len(const VwGroup *g);

/**
 * The `k`-th invariant factor, in divisibility order.
 *
 * # Safety
 * `g` must be a live group handle and `out` writable.
 */
VwStatus vw_group_torsion_at(const VwGroup *g, size_t k, int64_t *out);

/**
 * Signed shuffle count of `k` and `n` letters at `q = ±1`.
 *
 * # Safety
 * `out` must be writable.
 */
VwStatus vw_quantum_binomial(size_t k, size_t n, int32_t q, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VW_H */
