#ifndef ALGEN_H
#define ALGEN_H

#include <stdbool.h>
#include <stdint.h>

typedef enum AlgenStatus {
  ALGEN_STATUS_OK = 0,
  ALGEN_STATUS_NULL_POINTER = 1,
  ALGEN_STATUS_INVALID_UTF8 = 2,
  ALGEN_STATUS_PANIC = 3,
  ALGEN_STATUS_NON_PRIME = 10,
  ALGEN_STATUS_BAD_DEGREE = 11,
  ALGEN_STATUS_DIVISION_BY_ZERO = 12,
  ALGEN_STATUS_DIMENSION_MISMATCH = 13,
  ALGEN_STATUS_BAD_PARAMS = 14,
  ALGEN_STATUS_TOO_LARGE = 15,
  ALGEN_STATUS_SHAPE_MISMATCH = 16,
  ALGEN_STATUS_UNSUPPORTED_SIZE = 17,
  ALGEN_STATUS_FACTORIZATION_INCOMPLETE = 18,
  ALGEN_STATUS_CERTIFICATION_FAILED = 19,
  ALGEN_STATUS_DIVISION_INEXACT = 20,
  ALGEN_STATUS_NOT_DIVISIBLE = 21,
  ALGEN_STATUS_DIVERGENT_TAIL = 22,
  ALGEN_STATUS_INVALID_JSON = 23,
  ALGEN_STATUS_UNKNOWN_COMMAND = 24,
} AlgenStatus;

typedef enum AlgenPolyFamily {
  ALGEN_POLY_FAMILY_F = 0,
  ALGEN_POLY_FAMILY_H = 1,
  ALGEN_POLY_FAMILY_PHI = 2,
  ALGEN_POLY_FAMILY_PSI = 3,
} AlgenPolyFamily;

// A finite field `F_q`.
typedef struct AlgenField AlgenField;

// A tuple of integer matrices.
typedef struct AlgenZTuple AlgenZTuple;

// A certified real value: the truth lies within `error_bound` of `value`.
// `prime_bound` is the truncation point of an Euler product, 0 if none.
typedef struct AlgenDensity {
  double value;
  double error_bound;
  uint64_t prime_bound;
} AlgenDensity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread. Valid until the next failing
// call on the same thread; never null.
const char *algen_last_error(void);

// # Safety
// `s` must come from this library, or be null.
void algen_string_free(char *s);

// # Safety
// `out_field` must be valid for writes.
enum AlgenStatus algen_field_new(uint64_t p, uint32_t s, struct AlgenField **out_field);

// # Safety
// `field` must come from `algen_field_new`, or be null.
void algen_field_free(struct AlgenField *field);

// Field order `q`, or 0 for a null handle.
//
// # Safety
// `field` must be a live handle or null.
uint64_t algen_field_order(const struct AlgenField *field);

// Whether a tuple of square matrices over `field` generates `M_n(F_q)`.
// `tuple_json` is `{"k", "elements"}` or a bare array of matrices.
//
// # Safety
// Pointers must be valid; `tuple_json` nul-terminated.
enum AlgenStatus algen_field_generates(const struct AlgenField *field,
                                       const char *tuple_json,
                                       bool *out_generates);

// # Safety
// `tuple_json` must be nul-terminated and `out_tuple` valid for writes.
enum AlgenStatus algen_ztuple_from_json(const char *tuple_json, struct AlgenZTuple **out_tuple);

// # Safety
// `tuple` must come from `algen_ztuple_from_json`, or be null.
void algen_ztuple_free(struct AlgenZTuple *tuple);

// Generation of `M_n(Z)` by a single-factor tuple of `n x n` integer
// matrices. `out_index` receives the index as a decimal string (0 when the
// generated ring has lower rank); pass null to skip it.
//
// # Safety
// `tuple` must be live; out pointers valid or, for `out_index`, null.
enum AlgenStatus algen_ztuple_generates(const struct AlgenZTuple *tuple,
                                        bool *out_generates,
                                        char **out_index);

// Number of conjugacy classes of generating `k`-tuples of `M_n(F_q)`, as a
// decimal string.
//
// # Safety
// `out_count` must be valid for writes.
enum AlgenStatus algen_gen_count(uint32_t k, uint32_t n, uint64_t q, char **out_count);

// Number of `k`-tuples generating `M_n(F_{q^s})^m`, as a decimal string.
//
// # Safety
// `out_count` must be valid for writes.
enum AlgenStatus algen_count_power(uint32_t k,
                                   uint32_t n,
                                   uint64_t q,
                                   uint32_t s,
                                   uint32_t m,
                                   char **out_count);

// # Safety
// `out_density` must be valid for writes.
enum AlgenStatus algen_zeta(uint32_t s, double eps, struct AlgenDensity *out_density);

// Density of `k`-tuples in `Z^n` spanning it.
//
// # Safety
// `out_density` must be valid for writes.
enum AlgenStatus algen_density_zn(uint32_t k, uint32_t n, struct AlgenDensity *out_density);

// Density of `k`-tuples generating `M_n(Z)`, with Euler products cut at
// `prime_bound`.
//
// # Safety
// `out_density` must be valid for writes.
enum AlgenStatus algen_density_matrix(uint32_t n,
                                      uint32_t k,
                                      uint64_t prime_bound,
                                      struct AlgenDensity *out_density);

// Coefficients of a polynomial family member as a JSON array, low degree
// first.
//
// # Safety
// `out_json` must be valid for writes.
enum AlgenStatus algen_poly_json(enum AlgenPolyFamily family, uint32_t k, char **out_json);

// Least number of generators of `M_n(Z)^m`, `n` in {2, 3}.
//
// # Safety
// `out_r` must be valid for writes.
enum AlgenStatus algen_min_generators(uint32_t n, uint64_t m, uint32_t *out_r);

// Runs the command-line front end on `argv` (without the program name) and
// returns its exit code; the JSON document goes to `out_json`. Returns -1
// with `out_json` untouched if the arguments cannot be read.
//
// # Safety
// `argv` must hold `argc` nul-terminated strings; `out_json` valid for writes.
int algen_run(int argc, const char *const *argv, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALGEN_H */
