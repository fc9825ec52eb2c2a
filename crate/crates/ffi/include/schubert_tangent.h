#ifndef SCHUBERT_TANGENT_H
#define SCHUBERT_TANGENT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StStatus {
  ST_STATUS_OK = 0,
  ST_STATUS_NULL_POINTER = 1,
  ST_STATUS_INVALID_ARGUMENT = 2,
  ST_STATUS_PRECONDITION_FAILED = 3,
  ST_STATUS_INTERNAL = 4,
  ST_STATUS_PANIC = 5,
} StStatus;

/**
 * Opaque handle to a root datum.
 */
typedef struct StDatum StDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a datum for series `'A'`, `'B'`, `'C'` or `'D'` of the given rank.
 *
 * # Safety
 * `out` must be valid for writing a pointer.
 */
enum StStatus st_datum_new(char series, size_t rank, struct StDatum **out);

/**
 * Frees a datum. Null is ignored.
 *
 * # Safety
 * `d` must come from [`st_datum_new`] and not be freed twice.
 */
void st_datum_free(struct StDatum *d);

/**
 * Number of ambient coordinates (rank + 1 in type A).
 *
 * # Safety
 * `d` must be a live datum and `out` writable.
 */
enum StStatus st_datum_dim(const struct StDatum *d, size_t *out);

/**
 * Number of roots.
 *
 * # Safety
 * `d` must be a live datum and `out` writable.
 */
enum StStatus st_root_count(const struct StDatum *d, size_t *out);

/**
 * Index of the simple root `alpha_i` (one-based `i`), or of `-alpha_i` when
 * `negative` is true.
 *
 * # Safety
 * `d` must be a live datum and `out` writable.
 */
enum StStatus st_simple_root_index(const struct StDatum *d, size_t i, bool negative, size_t *out);

/**
 * `k_alpha` for the root with the given index.
 *
 * # Safety
 * `lambda` and `mu` must point to `len` readable values; `out` writable.
 */
enum StStatus st_k_alpha(const struct StDatum *d,
                         const int64_t *lambda_doubled,
                         const int64_t *mu_doubled,
                         size_t len,
                         size_t root,
                         int64_t *out);

/**
 * `l_alpha` over the search set given by one-based fundamental weight
 * indices (all fundamental weights when `search_len` is 0).
 *
 * # Safety
 * Pointer arguments must be valid for their stated lengths; `out` writable.
 */
enum StStatus st_l_alpha(const struct StDatum *d,
                         const int64_t *lambda_doubled,
                         const int64_t *mu_doubled,
                         size_t len,
                         size_t root,
                         const size_t *search,
                         size_t search_len,
                         int64_t *out);

/**
 * `l_H` for `H = sum m_beta H_beta` with `m_beta = num[i] / den[i]`.
 *
 * # Safety
 * `num` and `den` must hold `rank` values; other pointers as in [`st_l_alpha`].
 */
enum StStatus st_l_h(const struct StDatum *d,
                     const int64_t *lambda_doubled,
                     const int64_t *mu_doubled,
                     size_t len,
                     const int64_t *num,
                     const int64_t *den,
                     const size_t *search,
                     size_t search_len,
                     uint64_t characteristic,
                     int64_t *out);

/**
 * Runs a command-line invocation in process. `argv` excludes the program
 * name. The report (JSON or TSV, as requested) is returned in `out_report`
 * and must be released with [`st_string_free`]; `out_exit` receives the
 * command's exit code.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; outputs must be writable.
 */
enum StStatus st_run_command(const char *const *argv,
                             size_t argc,
                             char **out_report,
                             int32_t *out_exit);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void st_string_free(char *s);

/**
 * The message of the last failed call on this thread, or an empty string.
 * Valid until the next call into the library on the same thread.
 */
const char *st_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHUBERT_TANGENT_H */
