#ifndef ARBOR_H
#define ARBOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum ArborLevel {
  ARBOR_LEVEL_BASIC = 0,
  ARBOR_LEVEL_THEOREM = 1,
  ARBOR_LEVEL_ALTERNATING = 2,
} ArborLevel;

typedef enum ArborPairingMethod {
  ARBOR_PAIRING_METHOD_CONJUGATION = 0,
  ARBOR_PAIRING_METHOD_CLOSED_FORM = 1,
} ArborPairingMethod;

typedef enum ArborStatus {
  ARBOR_STATUS_OK = 0,
  ARBOR_STATUS_NULL_POINTER = 1,
  ARBOR_STATUS_PARSE = 2,
  ARBOR_STATUS_INVALID = 3,
  ARBOR_STATUS_INADMISSIBLE = 4,
  ARBOR_STATUS_BUFFER_TOO_SMALL = 5,
  ARBOR_STATUS_OVERFLOW = 6,
  ARBOR_STATUS_UTF8 = 7,
  ARBOR_STATUS_OUT_OF_RANGE = 8,
  ARBOR_STATUS_PANIC = 9,
} ArborStatus;

/**
 * Opaque handle to a named framed plumbing.
 */
typedef struct ArborPlumbing ArborPlumbing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a NUL-terminated tree file.
 */
enum ArborStatus arbor_plumbing_parse(const char *text, struct ArborPlumbing **out);

/**
 * The chain tree with `n_pairs` matched pairs, framing `f(w_i) = 2i + 1`,
 * `f(b_i) = -2i`, and every edge `+1`.
 */
enum ArborStatus arbor_plumbing_chain(size_t n_pairs, struct ArborPlumbing **out);

void arbor_plumbing_free(struct ArborPlumbing *p);

void arbor_string_free(char *s);

enum ArborStatus arbor_plumbing_vertex_count(const struct ArborPlumbing *p, size_t *out);

enum ArborStatus arbor_plumbing_edge_count(const struct ArborPlumbing *p, size_t *out);

/**
 * Replaces the edge signs: bit `e` of `index` set means edge `e` is `-1`.
 */
enum ArborStatus arbor_plumbing_set_labeling(struct ArborPlumbing *p, uint64_t index);

enum ArborStatus arbor_plumbing_serialize(const struct ArborPlumbing *p, char **out);

enum ArborStatus arbor_plumbing_dot(const struct ArborPlumbing *p, char **out);

/**
 * Label of the `index`-th basis vector in canonical order.
 */
enum ArborStatus arbor_basis_label(const struct ArborPlumbing *p, size_t index, char **out);

/**
 * Seifert matrix into `buf`, which must hold `n * n` entries.
 */
enum ArborStatus arbor_seifert_matrix(const struct ArborPlumbing *p, int64_t *buf, size_t len);

/**
 * Pairing on the homology of the complement into `buf` (`n * n` entries).
 */
enum ArborStatus arbor_pairing_matrix(const struct ArborPlumbing *p,
                                      enum ArborPairingMethod method,
                                      int64_t *buf,
                                      size_t len);

/**
 * Alexander polynomial coefficients, degree 0 first. `*needed` is always
 * set to the number of coefficients; `buf` may be null when `len` is 0.
 */
enum ArborStatus arbor_alexander_coefficients(const struct ArborPlumbing *p,
                                              int64_t *buf,
                                              size_t len,
                                              size_t *needed);

enum ArborStatus arbor_knot_determinant(const struct ArborPlumbing *p, int64_t *out);

enum ArborStatus arbor_knot_signature(const struct ArborPlumbing *p, int64_t *out);

/**
 * Sets `*passed` and `*violations` (may be null) for the given level.
 */
enum ArborStatus arbor_check_admissible(const struct ArborPlumbing *p,
                                        enum ArborLevel level,
                                        bool *passed,
                                        size_t *violations);

/**
 * Decides whether two labelings of the same framed tree can give
 * equivalent surfaces. After a negative verdict the obstruction is
 * described by [`arbor_last_obstruction`].
 */
enum ArborStatus arbor_surfaces_equivalent(const struct ArborPlumbing *a,
                                           const struct ArborPlumbing *b,
                                           bool *equivalent);

/**
 * Obstruction from the most recent negative [`arbor_surfaces_equivalent`]
 * on this thread, or null. Valid until the next call on the same thread.
 */
const char *arbor_last_obstruction(void);

/**
 * Number of equivalence classes among all labelings of `p`'s framed tree.
 */
enum ArborStatus arbor_count_classes(const struct ArborPlumbing *p, uint64_t *classes);

/**
 * Number of matched trees with `n_pairs` pairs, up to isomorphism.
 */
enum ArborStatus arbor_enumerate_count(size_t n_pairs, size_t *out);

/**
 * Message for the last failed call on this thread, or null after a
 * successful one. Valid until the next call on the same thread.
 */
const char *arbor_last_error(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ARBOR_H */
