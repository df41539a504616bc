#ifndef LEXINEQ_H
#define LEXINEQ_H

/* Generated by cbindgen from crates/ffi/src. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum LxStatus {
  LX_STATUS_OK = 0,
  LX_STATUS_NULL_POINTER = -1,
  LX_STATUS_INVALID_UTF8 = -2,
  LX_STATUS_PARSE = -3,
  LX_STATUS_UNSUPPORTED_FORM = -4,
  LX_STATUS_INVALID_ARGUMENT = -5,
  LX_STATUS_SOLVE = -6,
  LX_STATUS_BUFFER_TOO_SMALL = -7,
  LX_STATUS_PANIC = -99,
} LxStatus;

// Pointwise membership. The values match the PGM levels of the CLI.
typedef enum LxMembership {
  LX_MEMBERSHIP_OUT = 0,
  LX_MEMBERSHIP_POLE = 1,
  LX_MEMBERSHIP_IN = 2,
} LxMembership;

// Opaque region handle.
typedef struct LxRegion LxRegion;

// Opaque solution-set handle.
typedef struct LxSolution LxSolution;

typedef struct LxComplex {
  double re;
  double im;
} LxComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *lx_last_error_message(void);

// Dictionary order: -1 if `a < b`, 0 if equal, 1 if `a > b`.
int32_t lx_lex_cmp(struct LxComplex a, struct LxComplex b);

// Modulus and principal argument in `(-pi, pi]`; zero maps to `(0, 0)`.
//
// # Safety
// `r` and `theta` must be valid for writes.
enum LxStatus lx_polar(struct LxComplex z, double *r, double *theta);

// Parses, classifies and solves an inequality such as `"1/Z >= 1"`.
//
// # Safety
// `expr` must be a NUL-terminated string; `out` must be valid for writes.
enum LxStatus lx_solution_from_expr(const char *expr, struct LxSolution **out);

// Solves `A*Z - B >= 0`.
//
// # Safety
// `out` must be valid for writes.
enum LxStatus lx_solve_linear(struct LxComplex a, struct LxComplex b, struct LxSolution **out);

// Solves `A*Z - B >= 0 && C*Z - D >= 0`.
//
// # Safety
// `out` must be valid for writes.
enum LxStatus lx_solve_linear_system(struct LxComplex a,
                                     struct LxComplex b,
                                     struct LxComplex c,
                                     struct LxComplex d,
                                     struct LxSolution **out);

// Solves `(A*Z + B)/(Z + C) >= D`. A degenerate fraction (`B = A*C`)
// yields everything or nothing, minus the pole.
//
// # Safety
// `out` must be valid for writes.
enum LxStatus lx_solve_fractional(struct LxComplex a,
                                  struct LxComplex b,
                                  struct LxComplex c,
                                  struct LxComplex d,
                                  struct LxSolution **out);

// Solves `A*Z^2 + B*Z + C >= 0`; `A` must be nonzero.
//
// # Safety
// `out` must be valid for writes.
enum LxStatus lx_solve_quadratic(struct LxComplex a,
                                 struct LxComplex b,
                                 struct LxComplex c,
                                 struct LxSolution **out);

// # Safety
// `solution` must be a live handle; `out` must be valid for writes.
enum LxStatus lx_solution_contains(const struct LxSolution *solution,
                                   struct LxComplex z,
                                   enum LxMembership *out);

// Serializes the solution set as JSON. Free the string with
// [`lx_string_free`].
//
// # Safety
// `solution` must be a live handle; `out` must be valid for writes.
enum LxStatus lx_solution_to_json(const struct LxSolution *solution, char **out);

// # Safety
// `solution` must be NULL or a handle not yet freed.
void lx_solution_free(struct LxSolution *solution);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void lx_string_free(char *s);

// Creates the half-plane `{Z : Z >= anchor}`.
//
// # Safety
// `out` must be valid for writes.
enum LxStatus lx_region_new(struct LxComplex anchor, struct LxRegion **out);

// Appends a rotation by `theta` radians.
//
// # Safety
// `region` must be a live handle.
enum LxStatus lx_region_rotate(struct LxRegion *region, double theta);

// Appends a dilation by `r > 0`.
//
// # Safety
// `region` must be a live handle.
enum LxStatus lx_region_scale(struct LxRegion *region, double r);

// # Safety
// `region` must be a live handle.
enum LxStatus lx_region_translate(struct LxRegion *region, struct LxComplex offset);

// # Safety
// `region` must be a live handle.
enum LxStatus lx_region_invert(struct LxRegion *region);

// # Safety
// `region` must be a live handle.
enum LxStatus lx_region_sqrt(struct LxRegion *region);

// # Safety
// `region` must be a live handle; `out` must be valid for writes.
enum LxStatus lx_region_contains(const struct LxRegion *region,
                                 struct LxComplex z,
                                 enum LxMembership *out);

// Shape description as JSON, e.g. `{"shape":"disc",...}`.
//
// # Safety
// `region` must be a live handle; `out` must be valid for writes.
enum LxStatus lx_region_classify_json(const struct LxRegion *region, char **out);

// # Safety
// `region` must be NULL or a handle not yet freed.
void lx_region_free(struct LxRegion *region);

// Runs one order law (e.g. `"transitivity"`) and returns its report as
// JSON. A counterexample is not an error; inspect the `outcome` field.
//
// # Safety
// `law_id` must be a NUL-terminated string; `out` must be valid for writes.
enum LxStatus lx_check_law(const char *law_id, uint64_t samples, uint64_t seed, char **out);

// Samples the solution of `expr` on an `nx` by `ny` grid and writes one
// [`LxMembership`] value per cell into `cells`, row-major with the first
// row at `im_max`.
//
// # Safety
// `expr` must be a NUL-terminated string; `cells` must be valid for
// `cells_len` writes.
enum LxStatus lx_raster(const char *expr,
                        double re_min,
                        double re_max,
                        double im_min,
                        double im_max,
                        size_t nx,
                        size_t ny,
                        uint8_t *cells,
                        size_t cells_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LEXINEQ_H */
