#ifndef KERNELFORGE_H
#define KERNELFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes.
 */
typedef enum KfStatus {
  KF_STATUS_OK = 0,
  KF_STATUS_NULL_POINTER = 1,
  KF_STATUS_INVALID_ARGUMENT = 2,
  KF_STATUS_INVALID_DOMAIN = 3,
  KF_STATUS_UNSUPPORTED = 4,
  KF_STATUS_SHAPE = 5,
  KF_STATUS_OUTSIDE_DOMAIN = 6,
  KF_STATUS_SINGULAR = 7,
  KF_STATUS_BRANCH = 8,
  KF_STATUS_DIVERGENCE = 9,
  KF_STATUS_PARSE = 10,
  KF_STATUS_PANIC = 11,
} KfStatus;

/**
 * Opaque domain handle.
 */
typedef struct KfDomain KfDomain;

/**
 * Opaque virtual kernel handle (domain plus weight exponent).
 */
typedef struct KfVirtualKernel KfVirtualKernel;

typedef struct KfInvariants {
  uint32_t rank;
  uint32_t a;
  uint32_t b;
  uint32_t genus;
  uint32_t dim;
} KfInvariants;

typedef struct KfComplex {
  double re;
  double im;
} KfComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *kf_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void kf_string_free(char *s);

/**
 * Parses a type label (`I:m,n`, `II:n`, `III:n`, `IV:n`, `V`, `VI`).
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out_domain` must be writable.
 */
enum KfStatus kf_domain_new(const char *spec, struct KfDomain **out_domain);

/**
 * # Safety
 * `d` must come from [`kf_domain_new`] and not have been freed. NULL is ignored.
 */
void kf_domain_free(struct KfDomain *d);

/**
 * # Safety
 * Pointers must be valid.
 */
enum KfStatus kf_domain_invariants(const struct KfDomain *d, struct KfInvariants *out_inv);

/**
 * `chi(s)` as text: rising-factorial product, or expanded when `expanded`.
 *
 * # Safety
 * Pointers must be valid; free the result with [`kf_string_free`].
 */
enum KfStatus kf_chi_string(const struct KfDomain *d, bool expanded, char **out_str);

/**
 * `chi(0)/chi(s)` in floating point, `s > -1`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum KfStatus kf_hua_ratio(const struct KfDomain *d, double s, double *out_value);

/**
 * Decomposes the generating function for weight exponent `mu_num / mu_den >= 0`.
 *
 * # Safety
 * Pointers must be valid; release the handle with [`kf_vk_free`].
 */
enum KfStatus kf_vk_new(const struct KfDomain *d,
                        int64_t mu_num,
                        int64_t mu_den,
                        struct KfVirtualKernel **out_vk);

/**
 * # Safety
 * `vk` must come from [`kf_vk_new`] and not have been freed. NULL is ignored.
 */
void kf_vk_free(struct KfVirtualKernel *vk);

/**
 * Number of pole coefficients (`dim + 1`), or 0 for NULL.
 *
 * # Safety
 * `vk` must be valid or NULL.
 */
uintptr_t kf_vk_coeff_count(const struct KfVirtualKernel *vk);

/**
 * Coefficient `j` as an exact `"p/q"` string.
 *
 * # Safety
 * Pointers must be valid; free the result with [`kf_string_free`].
 */
enum KfStatus kf_vk_coeff(const struct KfVirtualKernel *vk, uintptr_t j, char **out_str);

/**
 * `(1/m!) d^m F/dt^m` at `t`, `|t| < 1`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum KfStatus kf_vk_f_eval(const struct KfVirtualKernel *vk,
                           struct KfComplex t,
                           uint32_t m,
                           struct KfComplex *out_value);

/**
 * Generic norm `N(x, y)`. Points are given either as all matrix entries in
 * row-major order or as independent coordinates.
 *
 * # Safety
 * `x` and `y` must point to `x_len` and `y_len` values; `out_value` must be writable.
 */
enum KfStatus kf_generic_norm(const struct KfDomain *d,
                              const struct KfComplex *x,
                              uintptr_t x_len,
                              const struct KfComplex *y,
                              uintptr_t y_len,
                              struct KfComplex *out_value);

/**
 * Bergman kernel of the inflated domain at `((z, zf), (w, wf))`, fibers of
 * length `m`. The base volume is exact for balls and normalized to one
 * otherwise.
 *
 * # Safety
 * Every array must hold the stated number of values.
 */
enum KfStatus kf_inflated_kernel(const struct KfVirtualKernel *vk,
                                 const struct KfComplex *z,
                                 uintptr_t z_len,
                                 const struct KfComplex *zf,
                                 const struct KfComplex *w,
                                 uintptr_t w_len,
                                 const struct KfComplex *wf,
                                 uintptr_t m,
                                 struct KfComplex *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KERNELFORGE_H */
