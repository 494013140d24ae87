/* Generated by cbindgen from crates/ffi. Do not edit. */

#ifndef TOMO_H
#define TOMO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TomoStatus {
  TOMO_STATUS_OK = 0,
  TOMO_STATUS_NULL_POINTER = 1,
  TOMO_STATUS_INVALID_PARAMETER = 2,
  TOMO_STATUS_NUMERICAL_FAILURE = 3,
  TOMO_STATUS_BUFFER_TOO_SMALL = 4,
  TOMO_STATUS_PANIC = 5,
} TomoStatus;

typedef enum TomoCombState {
  TOMO_COMB_STATE_ALPHA = 0,
  TOMO_COMB_STATE_BETA = 1,
} TomoCombState;

// Biphoton comb parameters and time window.
typedef struct TomoBiphoton TomoBiphoton;

// Entangled Talbot state for one `(D, R)`.
typedef struct TomoTalbot TomoTalbot;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer stays
// valid until the next call into this library on the same thread.
const char *tomo_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *tomo_version(void);

// Creates a Talbot state with standard geometry.
//
// # Safety
// `out` must be valid for writing one pointer.
enum TomoStatus tomo_talbot_new(size_t slits, double correlation, struct TomoTalbot **out);

// # Safety
// `h` must be NULL or a handle from [`tomo_talbot_new`] not yet freed.
void tomo_talbot_free(struct TomoTalbot *h);

// Slit count `D`, or 0 for a NULL handle.
//
// # Safety
// `h` must be NULL or a live handle.
size_t tomo_talbot_dim(const struct TomoTalbot *h);

// Subsystem von Neumann entropy in bits.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum TomoStatus tomo_talbot_svne(const struct TomoTalbot *h, double *out);

// Position-basis ε_TEI in bits.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum TomoStatus tomo_talbot_tei_position(const struct TomoTalbot *h, double *out);

// ε_TEI in the discrete Fourier bases, in bits.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum TomoStatus tomo_talbot_tei_discrete(const struct TomoTalbot *h, double *out);

// CGLMP value `I_D`.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum TomoStatus tomo_talbot_cglmp(const struct TomoTalbot *h, double *out);

// Reduced density matrix `ρ_A`, row-major, `D*D` values.
//
// # Safety
// `h` must be a live handle and `buf` valid for `len` writes.
enum TomoStatus tomo_talbot_density(const struct TomoTalbot *h, double *buf, size_t len);

// Creates a biphoton comb with the calibrated frequencies, `n_teeth` teeth
// per side, window half-width `half_width_s` seconds and `n_grid` samples per
// axis. `n_teeth = 0`, `half_width_s <= 0` or `n_grid = 0` select the
// calibrated values.
//
// # Safety
// `out` must be valid for writing one pointer.
enum TomoStatus tomo_biphoton_new(size_t n_teeth,
                                  double half_width_s,
                                  size_t n_grid,
                                  struct TomoBiphoton **out);

// # Safety
// `h` must be NULL or a handle from [`tomo_biphoton_new`] not yet freed.
void tomo_biphoton_free(struct TomoBiphoton *h);

// Samples per window axis, or 0 for a NULL handle.
//
// # Safety
// `h` must be NULL or a live handle.
size_t tomo_biphoton_grid_len(const struct TomoBiphoton *h);

// ε_TEI of the time-time slice in bits.
//
// # Safety
// `h` must be a live handle and `out` writable.
enum TomoStatus tomo_biphoton_tei(const struct TomoBiphoton *h,
                                  enum TomoCombState state,
                                  double *out);

// Normalized slice as a function of `τ = t_I - t_S`: `2n-1` values for
// offsets `-(n-1)..=n-1` grid steps.
//
// # Safety
// `h` must be a live handle and `buf` valid for `len` writes.
enum TomoStatus tomo_biphoton_profile(const struct TomoBiphoton *h,
                                      enum TomoCombState state,
                                      double *buf,
                                      size_t len);

// Normalized slice on the full grid, row-major with rows indexed by `t_S`:
// `n*n` values.
//
// # Safety
// `h` must be a live handle and `buf` valid for `len` writes.
enum TomoStatus tomo_biphoton_slice(const struct TomoBiphoton *h,
                                    enum TomoCombState state,
                                    double *buf,
                                    size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOMO_H */
