#ifndef CHARGED3_H
#define CHARGED3_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Class of a phase point by the rank of the integral map.
 */
typedef enum C3PointClass {
  C3_POINT_CLASS_REGULAR = 0,
  C3_POINT_CLASS_COLLINEAR_PHASE = 1,
  C3_POINT_CLASS_EQUILIBRIUM = 2,
  C3_POINT_CLASS_RELATIVE_EQUILIBRIUM = 3,
} C3PointClass;

/**
 * Outcome of a call.
 */
typedef enum C3Status {
  C3_STATUS_OK = 0,
  C3_STATUS_NULL_POINTER = 1,
  C3_STATUS_INVALID_INPUT = 2,
  C3_STATUS_ALL_ZERO = 3,
  C3_STATUS_DEGENERATE_AT_COLLISION = 4,
  C3_STATUS_ON_DISCRIMINANT = 5,
  C3_STATUS_BOUNDARY = 6,
  C3_STATUS_CHART_UNDEFINED = 7,
  C3_STATUS_NOT_A_CUSP = 8,
  C3_STATUS_COLLISION_POINT = 9,
  C3_STATUS_NOT_A_CENTRAL_CONFIGURATION = 10,
  C3_STATUS_NOT_REALIZABLE = 11,
  C3_STATUS_NONPOSITIVE_MULTIPLIER = 12,
  C3_STATUS_COLLISION = 13,
  C3_STATUS_NO_SUCH_ROOT = 14,
  C3_STATUS_OUT_OF_RANGE = 15,
  C3_STATUS_PANIC = 16,
} C3Status;

/**
 * Real roots of the reduced quintic.
 */
typedef struct C3RootList C3RootList;

/**
 * Classified grid of normalised couplings.
 */
typedef struct C3Sweep C3Sweep;

/**
 * One certified root.
 */
typedef struct C3Root {
  double value;
  double lo;
  double hi;
  /**
   * 1, 2 or 3.
   */
  uint8_t interval;
  uint32_t multiplicity;
} C3Root;

/**
 * One classified cell. `region` is 1 to 13, 0 on the boundary and 255 for
 * counts outside the known table; the counts are zero on the boundary.
 */
typedef struct C3Cell {
  double beta1;
  double beta2;
  uint8_t region;
  uint32_t counts[3];
  uint32_t negative[3];
} C3Cell;

/**
 * A relative equilibrium and the singular values of the integral map there.
 */
typedef struct C3Releq {
  double lambda;
  double energy;
  double angular_momentum[3];
  /**
   * Descending.
   */
  double singular_values[10];
  uint32_t rank;
  uint32_t class_;
} C3Releq;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *c3_version(void);

/**
 * Copy the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length.
 *
 * # Safety
 * `buf` must be valid for `len` bytes or null.
 */
size_t c3_last_error(char *buf, size_t len);

/**
 * Isolate the real roots of `f(.; alpha, masses)` in exact arithmetic.
 *
 * # Safety
 * `alpha` and `masses` point to three doubles; `out` is writable.
 */
enum C3Status c3_roots_isolate(const double *alpha, const double *masses, struct C3RootList **out);

/**
 * Number of roots in the list, 0 for null.
 *
 * # Safety
 * `list` is null or a handle from [`c3_roots_isolate`].
 */
size_t c3_roots_len(const struct C3RootList *list);

/**
 * # Safety
 * `list` is a live handle; `out` is writable.
 */
enum C3Status c3_roots_get(const struct C3RootList *list, size_t index, struct C3Root *out);

/**
 * # Safety
 * `list` is null or a handle not yet freed.
 */
void c3_roots_free(struct C3RootList *list);

/**
 * Simple-root counts `(n1, n2, n3)`.
 *
 * # Safety
 * `alpha`, `masses` point to three doubles; `counts` to three writable `u32`.
 */
enum C3Status c3_count_roots(const double *alpha, const double *masses, uint32_t *counts);

/**
 * Classify one point; returns `Boundary` on the discriminant set or an axis.
 *
 * # Safety
 * `masses` points to three doubles; `out` is writable.
 */
enum C3Status c3_classify(double beta1, double beta2, const double *masses, struct C3Cell *out);

/**
 * Classify an `n1 x n2` grid, row-major with `beta2` outer.
 *
 * # Safety
 * `masses` points to three doubles; `out` is writable.
 */
enum C3Status c3_sweep_new(double min1,
                           double max1,
                           size_t n1,
                           double min2,
                           double max2,
                           size_t n2,
                           const double *masses,
                           struct C3Sweep **out);

/**
 * # Safety
 * `sweep` is null or a live handle.
 */
size_t c3_sweep_len(const struct C3Sweep *sweep);

/**
 * # Safety
 * `sweep` is a live handle; `out` is writable.
 */
enum C3Status c3_sweep_get(const struct C3Sweep *sweep, size_t index, struct C3Cell *out);

/**
 * # Safety
 * `sweep` is null or a handle not yet freed.
 */
void c3_sweep_free(struct C3Sweep *sweep);

/**
 * The six special parameters for masses `(mu, mu, 1)` in increasing order:
 * `xi-, eta-, -1, eta+, xi+, 1`.
 *
 * # Safety
 * `out` points to six writable doubles.
 */
enum C3Status c3_special_points(double mu, double *out);

/**
 * The point `c(u)` of the discriminant curve; `Boundary` when it is at
 * infinity.
 *
 * # Safety
 * `masses` points to three doubles; `out` to two writable doubles.
 */
enum C3Status c3_gamma(double u, const double *masses, double *out);

/**
 * Relative equilibrium over the collinear configuration at the root `u`
 * of `f` (unit gap between bodies 2 and 3).
 *
 * # Safety
 * `alpha`, `masses` point to three doubles; `out` is writable.
 */
enum C3Status c3_releq_collinear(const double *alpha,
                                 const double *masses,
                                 double u,
                                 double tol,
                                 struct C3Releq *out);

/**
 * Relative equilibrium over the non-collinear configuration with unit
 * moment of inertia.
 *
 * # Safety
 * `alpha`, `masses` point to three doubles; `out` is writable.
 */
enum C3Status c3_releq_noncollinear(const double *alpha,
                                    const double *masses,
                                    double tol,
                                    struct C3Releq *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARGED3_H */
