#ifndef SPARSE_F2_H
#define SPARSE_F2_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum Sf2Status {
  SF2_STATUS_OK = 0,
  SF2_STATUS_NULL_POINTER = 1,
  SF2_STATUS_INVALID_ARGUMENT = 2,
  SF2_STATUS_PARSE = 3,
  SF2_STATUS_CAP_EXCEEDED = 4,
  SF2_STATUS_NOT_A_FOREST = 5,
  SF2_STATUS_INVARIANT_VIOLATION = 6,
  SF2_STATUS_PANIC = 7,
} Sf2Status;

// Hypergraph handle.
typedef struct Sf2Graph Sf2Graph;

// Exact rational handle.
typedef struct Sf2Rational Sf2Rational;

// Equation system handle.
typedef struct Sf2System Sf2System;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until the
// next call into this library on the same thread.
const char *sf2_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *sf2_version(void);

// Frees a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void sf2_string_free(char *s);

// Builds a hypergraph on `n` variables from `m` edges in CSR form: edge `i`
// is `vars[offsets[i] .. offsets[i + 1]]`, so `offsets` has `m + 1` entries.
//
// # Safety
// `offsets` must hold `m + 1` readable values and `vars` at least
// `offsets[m]`; `out` must be writable.
enum Sf2Status sf2_graph_from_edges(size_t n,
                                    size_t m,
                                    const size_t *offsets,
                                    const size_t *vars,
                                    struct Sf2Graph **out);

// Parses a graph from JSON or edge-list text.
//
// # Safety
// `text` must be NUL-terminated; `out` writable.
enum Sf2Status sf2_graph_parse(const char *text, struct Sf2Graph **out);

// Built-in family such as `"path:3"` or `"cycle:5"`.
//
// # Safety
// `name` must be NUL-terminated; `out` writable.
enum Sf2Status sf2_graph_family(const char *name, struct Sf2Graph **out);

// Number of variables, or 0 for NULL.
//
// # Safety
// `g` must be a live handle or NULL.
size_t sf2_graph_n(const struct Sf2Graph *g);

// Number of edges, or 0 for NULL.
//
// # Safety
// `g` must be a live handle or NULL.
size_t sf2_graph_m(const struct Sf2Graph *g);

// # Safety
// `g` must come from this library and not have been freed; NULL is ignored.
void sf2_graph_free(struct Sf2Graph *g);

// Exact consistency probability by exhaustive enumeration. `threads == 0`
// uses the default pool.
//
// # Safety
// `g` live handle; `out` writable.
enum Sf2Status sf2_oracle_q(const struct Sf2Graph *g, size_t threads, struct Sf2Rational **out);

// Exact consistency probability of a 2-uniform forest.
//
// # Safety
// `g` live handle; `out` writable.
enum Sf2Status sf2_forest_q(const struct Sf2Graph *g, struct Sf2Rational **out);

// Closed-form `q` of the path with `n` edges.
//
// # Safety
// `out` writable.
enum Sf2Status sf2_path_q(size_t n, struct Sf2Rational **out);

// Closed-form `q` of the star with `n` edges.
//
// # Safety
// `out` writable.
enum Sf2Status sf2_star_q(size_t n, struct Sf2Rational **out);

// Cycle formula value for `n >= 3` edges.
//
// # Safety
// `out` writable.
enum Sf2Status sf2_cycle_q(size_t n, struct Sf2Rational **out);

// Nearest double, or NaN for NULL.
//
// # Safety
// `r` live handle or NULL.
double sf2_rational_to_f64(const struct Sf2Rational *r);

// Decimal numerator; free with [`sf2_string_free`]. NULL for NULL.
//
// # Safety
// `r` live handle or NULL.
char *sf2_rational_numerator(const struct Sf2Rational *r);

// Decimal denominator; free with [`sf2_string_free`]. NULL for NULL.
//
// # Safety
// `r` live handle or NULL.
char *sf2_rational_denominator(const struct Sf2Rational *r);

// Exact equality of two rationals; false if either is NULL.
//
// # Safety
// Both live handles or NULL.
bool sf2_rational_equal(const struct Sf2Rational *a, const struct Sf2Rational *b);

// # Safety
// `r` must come from this library and not have been freed; NULL is ignored.
void sf2_rational_free(struct Sf2Rational *r);

// Uniform random system on `g` drawn from `seed`.
//
// # Safety
// `g` live handle; `out` writable.
enum Sf2Status sf2_system_random(const struct Sf2Graph *g, uint64_t seed, struct Sf2System **out);

// System on `g` with one root-set mask per edge.
//
// # Safety
// `g` live handle; `masks` holds `len` values; `out` writable.
enum Sf2Status sf2_system_from_masks(const struct Sf2Graph *g,
                                     const uint64_t *masks,
                                     size_t len,
                                     struct Sf2System **out);

// Decides whether the system has a solution. Uses the assignment sweep when
// it fits and the backtracking search otherwise.
//
// # Safety
// `s` live handle; `out` writable.
enum Sf2Status sf2_system_is_consistent(const struct Sf2System *s, bool *out);

// DIMACS CNF text; free with [`sf2_string_free`].
//
// # Safety
// `s` live handle; `out` writable.
enum Sf2Status sf2_system_to_dimacs(const struct Sf2System *s, char **out);

// # Safety
// `s` must come from this library and not have been freed; NULL is ignored.
void sf2_system_free(struct Sf2System *s);

// Monte Carlo estimate: writes the number of consistent samples out of
// `trials`. Deterministic in `seed` for any `threads` (0 = default pool).
//
// # Safety
// `g` live handle; `successes` writable.
enum Sf2Status sf2_mc_q(const struct Sf2Graph *g,
                        uint64_t trials,
                        uint64_t seed,
                        size_t threads,
                        uint64_t *successes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPARSE_F2_H */
