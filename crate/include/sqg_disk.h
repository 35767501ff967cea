#ifndef SQG_DISK_H
#define SQG_DISK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum {
  SQG_STATUS_OK = 0,
  SQG_STATUS_NULL_POINTER = 1,
  SQG_STATUS_INVALID_ARGUMENT = 2,
  SQG_STATUS_DOMAIN = 3,
  SQG_STATUS_SIZE_MISMATCH = 4,
  SQG_STATUS_NON_FINITE = 5,
  SQG_STATUS_NO_CONVERGENCE = 6,
  SQG_STATUS_INTERNAL = 7,
} SqgStatus;

/**
 * Which partition of unity a Besov norm uses.
 */
typedef enum {
  SQG_PARTITION_DYADIC = 0,
  SQG_PARTITION_RESOLVENT = 1,
} SqgPartition;

/**
 * Spectral coefficients on the basis of the space that created it.
 */
typedef struct SqgField SqgField;

/**
 * A truncated eigenbasis with its transforms.
 */
typedef struct SqgSpace SqgSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *sqg_last_error_message(void);

/**
 * `J_order(x)`.
 */
SqgStatus sqg_bessel_j(uint32_t order, double x, double *out);

/**
 * `j_{order,k}`, the `k`-th positive zero (`k >= 1`).
 */
SqgStatus sqg_bessel_zero(uint32_t order, uintptr_t k, double *out);

/**
 * Basis `|m| <= max_m`, `1 <= k <= max_k` with its default grids.
 */
SqgStatus sqg_space_new(uintptr_t max_m, uintptr_t max_k, SqgSpace **out);

/**
 * Releases a space; null is ignored.
 */
void sqg_space_free(SqgSpace *space);

/**
 * Collocation grid size; `sqg_synthesize` and `sqg_analyze` use arrays of
 * `nr * ntheta` values, ring-major.
 */
SqgStatus sqg_space_grid_shape(const SqgSpace *space, uintptr_t *nr, uintptr_t *ntheta);

/**
 * Eigenvalue of `Λ_D` for mode `(m, k)`, `k >= 1`.
 */
SqgStatus sqg_space_lambda(const SqgSpace *space, int32_t m, uintptr_t k, double *out);

/**
 * New zero field on the basis of `space`.
 */
SqgStatus sqg_field_new(const SqgSpace *space, SqgField **out);

/**
 * Releases a field; null is ignored.
 */
void sqg_field_free(SqgField *field);

/**
 * Sets coefficient `c(m, k)`; `c(-m, k)` becomes its conjugate so the field
 * stays real. For `m = 0` the imaginary part is dropped.
 */
SqgStatus sqg_field_set(SqgField *field, int32_t m, uintptr_t k, double re, double im);

SqgStatus sqg_field_get(const SqgField *field, int32_t m, uintptr_t k, double *re, double *im);

/**
 * Grid values of `field` into `values[0..len]`, `len = nr * ntheta`.
 */
SqgStatus sqg_synthesize(const SqgSpace *space,
                         const SqgField *field,
                         double *values,
                         uintptr_t len);

/**
 * Projects `values[0..len]` (collocation grid, ring-major) onto `out`.
 */
SqgStatus sqg_analyze(const SqgSpace *space, const double *values, uintptr_t len, SqgField *out);

/**
 * `‖f‖_{Ḃ^s_{p,q}}`; pass `INFINITY` for `p` or `q = ∞`.
 */
SqgStatus sqg_besov_norm(const SqgSpace *space,
                         const SqgField *field,
                         double s,
                         double p,
                         double q,
                         SqgPartition partition,
                         double *out);

/**
 * `out = B(f, g) = (∇^⊥Λ_D^{-1} f · ∇) g`, projected. `out` may alias
 * neither `f` nor `g`.
 */
SqgStatus sqg_advect(const SqgSpace *space, const SqgField *f, const SqgField *g, SqgField *out);

/**
 * One ETDRK2 step of size `dt` of `∂_tθ + (Λ_D + εΛ_D²)θ + B(θ, θ) = 0`,
 * in place.
 */
SqgStatus sqg_etd_step(const SqgSpace *space, SqgField *theta, double dt, double epsilon);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SQG_DISK_H */
