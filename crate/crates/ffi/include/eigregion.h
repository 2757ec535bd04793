#ifndef EIGREGION_H
#define EIGREGION_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ErNorm {
  ER_NORM_ONE = 0,
  ER_NORM_INF = 1,
} ErNorm;

typedef enum ErStatus {
  ER_STATUS_OK = 0,
  ER_STATUS_NULL_POINTER = 1,
  ER_STATUS_INVALID_ARGUMENT = 2,
  ER_STATUS_DIMENSION = 3,
  ER_STATUS_SINGULAR = 4,
  ER_STATUS_NO_CONVERGENCE = 5,
  ER_STATUS_INVALID_BASIS = 6,
  ER_STATUS_RECIPE_UNDEFINED = 7,
  ER_STATUS_TOO_LARGE = 8,
  ER_STATUS_BUFFER_TOO_SMALL = 9,
  ER_STATUS_INTERNAL = 10,
} ErStatus;

// Matrix polynomial handle.
typedef struct ErPolynomial ErPolynomial;

// Inclusion region handle.
typedef struct ErRegion ErRegion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *er_last_error(void);

// Power-basis polynomial from `degree + 1` row-major `size x size`
// coefficients `A_0, ..., A_degree` stored back to back.
//
// # Safety
// `re` and `im` must point to `(degree + 1) * size * size` doubles.
enum ErStatus er_polynomial_new(size_t degree,
                                size_t size,
                                const double *re,
                                const double *im,
                                struct ErPolynomial **result);

// Damped mass-spring chain of size `m`.
//
// # Safety
// `result` must be a valid pointer.
enum ErStatus er_polynomial_mass_spring(size_t m,
                                        double tau,
                                        double kappa,
                                        struct ErPolynomial **result);

// Monicized acoustic problem with `ell (ell - 1)` unknowns.
//
// # Safety
// `result` must be a valid pointer.
enum ErStatus er_polynomial_acoustic(size_t ell,
                                     double zeta_re,
                                     double zeta_im,
                                     struct ErPolynomial **result);

// Galerkin model of the damped string with `n_basis` sine modes.
//
// # Safety
// `result` must be a valid pointer.
enum ErStatus er_polynomial_string(size_t n_basis,
                                   double eps,
                                   double delta,
                                   struct ErPolynomial **result);

// # Safety
// `p` must be null or a handle from this library, freed at most once.
void er_polynomial_free(struct ErPolynomial *p);

// # Safety
// `p` must be a valid handle.
size_t er_polynomial_degree(const struct ErPolynomial *p);

// # Safety
// `p` must be a valid handle.
size_t er_polynomial_size(const struct ErPolynomial *p);

// Inclusion region of `p` in the basis described by `basis_json` (the
// JSON basis object, e.g. `{"variant":"newton","nodes":[[1,0],[2,0]]}`);
// null means the power basis.
//
// # Safety
// `p` must be a valid handle, `basis_json` null or a NUL-terminated string.
enum ErStatus er_region_compute(const struct ErPolynomial *p,
                                const char *basis_json,
                                enum ErNorm norm,
                                struct ErRegion **result);

// # Safety
// `r` must be null or a handle from this library, freed at most once.
void er_region_free(struct ErRegion *r);

// Common disk radius `gamma * rho`; NaN for a null handle.
//
// # Safety
// `r` must be a valid handle.
double er_region_radius(const struct ErRegion *r);

// # Safety
// `r` must be a valid handle.
double er_region_gamma(const struct ErRegion *r);

// # Safety
// `r` must be a valid handle.
double er_region_rho(const struct ErRegion *r);

// # Safety
// `r` must be a valid handle.
size_t er_region_disk_count(const struct ErRegion *r);

// Centre of disk `index`.
//
// # Safety
// `r` must be a valid handle and `re`, `im` valid pointers.
enum ErStatus er_region_disk_center(const struct ErRegion *r, size_t index, double *re, double *im);

// # Safety
// `r` must be a valid handle.
size_t er_region_component_count(const struct ErRegion *r);

// Predicted eigenvalue count of component `index`.
//
// # Safety
// `r` must be a valid handle and `count` a valid pointer.
enum ErStatus er_region_predicted_count(const struct ErRegion *r, size_t index, size_t *count);

// Region as a JSON document. Release the string with [`er_string_free`].
//
// # Safety
// `r` must be a valid handle and `json` a valid pointer.
enum ErStatus er_region_to_json(const struct ErRegion *r, char **json);

// # Safety
// `s` must be null or a string returned by this library, freed at most once.
void er_string_free(char *s);

// Checks the region against the eigenvalue oracle. `worst_margin` is the
// largest distance by which an eigenvalue lies outside the disks (negative
// when all are strictly inside).
//
// # Safety
// Handles must be valid; `contained` and `worst_margin` valid pointers.
enum ErStatus er_region_verify(const struct ErPolynomial *p,
                               const struct ErRegion *r,
                               bool *contained,
                               double *worst_margin);

// Oracle eigenvalues sorted by real then imaginary part. Writes the number
// of eigenvalues to `count`; fails with `BufferTooSmall` (after setting
// `count`) when `capacity` is insufficient.
//
// # Safety
// `re` and `im` must hold `capacity` doubles; `count` must be valid.
enum ErStatus er_eigenvalues(const struct ErPolynomial *p,
                             double *re,
                             double *im,
                             size_t capacity,
                             size_t *count);

// Cauchy radius for `‖A_n⁻¹‖ = inv_leading_norm` and lower norms
// `b_0, ..., b_{n-1}`.
//
// # Safety
// `lower` must hold `n` doubles; `rho` must be valid.
enum ErStatus er_cauchy_radius(double inv_leading_norm, const double *lower, size_t n, double *rho);

// Radius of the eigenvalue-free disk around the origin; `INFINITY` when
// the reversed polynomial has only its leading term.
//
// # Safety
// `p` must be a valid handle and `r_min` a valid pointer.
enum ErStatus er_reversal_exclusion(const struct ErPolynomial *p, enum ErNorm norm, double *r_min);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EIGREGION_H */
