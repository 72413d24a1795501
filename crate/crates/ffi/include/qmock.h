#ifndef QMOCK_H
#define QMOCK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum QmStatus {
  QM_STATUS_OK = 0,
  QM_STATUS_INVALID_PARAMS = 1,
  QM_STATUS_BAD_SPECIALIZATION = 2,
  QM_STATUS_TOLERANCE_NOT_REACHED = 3,
  QM_STATUS_NULL_POINTER = 4,
  QM_STATUS_OUT_OF_RANGE = 5,
  QM_STATUS_OVERFLOW = 6,
  QM_STATUS_INVALID_UTF8 = 7,
  QM_STATUS_INTERNAL = 8,
} QmStatus;

// Opaque truncated power series.
typedef struct QmSeries QmSeries;

// Probability report; fields that do not apply are NaN.
typedef struct QmProbResult {
  double prob_w;
  double prob_x;
  double cond_w_given_x;
  double cond_part2;
  double g2;
  double abs_err_part1;
  double abs_err_part2;
  double mc_stderr;
  double tail_bound;
  double pipeline_gap;
} QmProbResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *qm_last_error_message(void);

// Generating function of the overpartitions counted by `B`, to order `order`.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum QmStatus qm_series_closed_b(uint32_t d, uint32_t r, size_t order, struct QmSeries **out);

// Generating function of the overpartitions counted by `C`.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum QmStatus qm_series_closed_c(uint32_t d, uint32_t r, size_t order, struct QmSeries **out);

// `f(x0; q)` from the functional equation, `x0 = sign * q^exponent`.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum QmStatus qm_series_f(uint32_t d,
                          uint32_t r,
                          int32_t x0_sign,
                          uint32_t x0_exponent,
                          size_t order,
                          struct QmSeries **out);

// `g2(x; q^step)` with `x = sign * q^exponent`, `1 <= exponent < step`.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum QmStatus qm_series_g2(int32_t sign,
                           uint32_t exponent,
                           uint32_t step,
                           size_t order,
                           struct QmSeries **out);

// `g3(x; q^step)` with `x = sign * q^exponent`, `1 <= exponent < step`.
//
// # Safety
// `out` must be a valid pointer to writable storage for a handle.
enum QmStatus qm_series_g3(int32_t sign,
                           uint32_t exponent,
                           uint32_t step,
                           size_t order,
                           struct QmSeries **out);

// Truncation order of `s` (0 for NULL).
//
// # Safety
// `s` must be NULL or a live handle.
size_t qm_series_order(const struct QmSeries *s);

// Coefficient of `q^n` as a 64-bit integer.
//
// # Safety
// `s` must be a live handle and `out` a valid pointer.
enum QmStatus qm_series_coeff_i64(const struct QmSeries *s, size_t n, int64_t *out);

// Coefficient of `q^n` as a decimal string, or NULL on error. Release with
// `qm_string_free`.
//
// # Safety
// `s` must be a live handle.
char *qm_series_coeff_string(const struct QmSeries *s, size_t n);

// Releases a series handle. NULL is ignored.
//
// # Safety
// `s` must be NULL or a handle not yet freed.
void qm_series_free(struct QmSeries *s);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must be NULL or a string from this library not yet freed.
void qm_string_free(char *s);

// Number of members of size `n` in the named family (`"obar-b"`,
// `"obar-c"`, `"obar-e"`, `"schur-b"`, `"schur-c"`, `"schur-e"`,
// `"schur-b-matrix"`); `parts < 0` counts all lengths.
//
// # Safety
// `family` must be a NUL-terminated string and `out` a valid pointer.
enum QmStatus qm_count(const char *family,
                       uint32_t d,
                       uint32_t r,
                       uint32_t n,
                       int64_t parts,
                       uint64_t *out);

// `g2(-q^r; q^d)` at real `0 < q < 1`.
//
// # Safety
// `out` must be a valid pointer.
enum QmStatus qm_g2_real(uint32_t d, uint32_t r, double q, double *out);

// Both conditional identities through the exact pipelines.
//
// # Safety
// `out` must be a valid pointer.
enum QmStatus qm_prob_exact(uint32_t d, uint32_t r, double q, struct QmProbResult *out);

// Seeded Monte Carlo estimate of both conditional probabilities, with the
// horizon chosen from the tail bound.
//
// # Safety
// `out` must be a valid pointer.
enum QmStatus qm_prob_mc(uint32_t d,
                         uint32_t r,
                         double q,
                         uint64_t samples,
                         uint64_t seed,
                         struct QmProbResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QMOCK_H */
