#ifndef HYPEREXACT_H
#define HYPEREXACT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  HX_STATUS_OK = 0,
  HX_STATUS_NULL_POINTER = 1,
  HX_STATUS_INVALID_UTF8 = 2,
  HX_STATUS_PARSE = 3,
  HX_STATUS_DOMAIN = 4,
  HX_STATUS_POLE = 5,
  HX_STATUS_ILL_DEFINED = 6,
  HX_STATUS_CLASSIFICATION = 7,
  HX_STATUS_NOT_SUMMABLE = 8,
  HX_STATUS_INVARIANT = 9,
  HX_STATUS_INDEX_OUT_OF_RANGE = 10,
  HX_STATUS_PANIC = 11,
} HxStatus;

/**
 * Value of a `2F1` evaluation.
 */
typedef struct HxEvalResult HxEvalResult;

/**
 * Outcome of Gosper's algorithm on a term.
 */
typedef struct HxGosper HxGosper;

/**
 * Reports from a verification run.
 */
typedef struct HxReportList HxReportList;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or null. Free with [`hx_string_free`].
 */
char *hx_last_error_message(void);

void hx_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *hx_version(void);

/**
 * Evaluates `2F1(a, b; c; x)`; non-terminating series are enclosed to
 * width at most `eps`.
 */
HxStatus hx_eval(const char *a,
                 const char *b,
                 const char *c,
                 const char *x,
                 const char *eps,
                 HxEvalResult **out);

/**
 * 1 for an exact value, 0 for an enclosure or a null handle.
 */
int32_t hx_eval_result_is_exact(const HxEvalResult *r);

/**
 * Classification name, e.g. `extended-terminating`.
 */
char *hx_eval_result_classification(const HxEvalResult *r);

/**
 * Lower end of the value: the exact value itself, or the enclosure's `lo`.
 */
char *hx_eval_result_lower(const HxEvalResult *r);

/**
 * Upper end of the value: the exact value itself, or the enclosure's `hi`.
 */
char *hx_eval_result_upper(const HxEvalResult *r);

void hx_eval_result_free(HxEvalResult *r);

/**
 * Runs Gosper's algorithm on the term with ratio `num(n)/den(n)` and
 * `t(0) = t0`. Polynomials are comma-separated coefficients, constant first.
 * A term without a hypergeometric anti-difference still succeeds; query it
 * with [`hx_gosper_is_summable`].
 */
HxStatus hx_gosper(const char *num, const char *den, const char *t0, HxGosper **out);

int32_t hx_gosper_is_summable(const HxGosper *g);

/**
 * Multi-line text of the normal form, `x(n)` and `R(n)`; null when not summable.
 */
char *hx_gosper_certificate(const HxGosper *g);

/**
 * `sum_{n=n0}^{n1} t(n)` through the certificate.
 */
HxStatus hx_gosper_definite_sum(const HxGosper *g, uint64_t n0, uint64_t n1, char **out);

void hx_gosper_free(HxGosper *g);

/**
 * Runs the verification suite for `selector` (an identity id or `all`)
 * with default grids and the given seed.
 */
HxStatus hx_verify(const char *selector, uint64_t seed, HxReportList **out);

uintptr_t hx_report_list_len(const HxReportList *l);

uintptr_t hx_report_list_passed(const HxReportList *l);

/**
 * Report `index` as one line of JSON.
 */
HxStatus hx_report_list_json(const HxReportList *l, uintptr_t index, char **out);

void hx_report_list_free(HxReportList *l);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPEREXACT_H */
