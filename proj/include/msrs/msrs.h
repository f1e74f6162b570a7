/* C interface to the multistable regulatory system classifier.
 *
 * Objects are opaque and owned by the caller once returned; free them with
 * the matching *_free function. Strings returned through char** are
 * heap-allocated and released with msrs_string_free. Rationals are passed as
 * "a/b" or integer strings. Every call returns MSRS_OK or an error code; the
 * message of the last failure on the calling thread is available from
 * msrs_last_error.
 */
#ifndef MSRS_H
#define MSRS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define MSRS_API __attribute__((visibility("default")))
#else
#define MSRS_API
#endif

typedef enum msrs_status {
  MSRS_OK = 0,
  MSRS_E_PARSE = 1,
  MSRS_E_BAD_PARAMETER = 2,
  MSRS_E_BAD_MULTIPLICITY = 3,
  MSRS_E_NOT_DIVISIBLE = 4,
  MSRS_E_DIVISION_BY_ZERO = 5,
  MSRS_E_IDENTICALLY_ZERO = 6,
  MSRS_E_UNDECIDABLE = 7,
  MSRS_E_DEGENERATE_SOLUTION = 8,
  MSRS_E_INFINITE_SOLUTIONS = 9,
  MSRS_E_EMPTY_GAP = 10,
  MSRS_E_VALIDATION = 11,
  MSRS_E_INVALID_ARGUMENT = 12,
  MSRS_E_INTERNAL = 13,
  MSRS_E_NULL = 14,
  MSRS_E_RANGE = 15
} msrs_status;

typedef enum msrs_flag {
  MSRS_VERIFIED_CHANGE = 0,
  MSRS_PRUNED = 1,
  MSRS_KEPT_UNVERIFIED = 2
} msrs_flag;

typedef struct msrs_model msrs_model;
typedef struct msrs_result msrs_result;

MSRS_API const char* msrs_last_error(void);
MSRS_API const char* msrs_status_name(msrs_status s);
MSRS_API void msrs_string_free(char* s);

/* family: "simultaneous_decision", "mutual_inhibition" or "bhlh". Optional
 * parameters may be NULL. */
MSRS_API msrs_status msrs_model_builtin(const char* family, int n, const char* c, const char* alpha, const char* K2,
                                        const char* a_t, msrs_model** out);
MSRS_API msrs_status msrs_model_parse(const char* text, msrs_model** out);
MSRS_API msrs_status msrs_model_serialize(const msrs_model* m, char** out);
MSRS_API int msrs_model_n(const msrs_model* m);
MSRS_API void msrs_model_free(msrs_model* m);

typedef struct msrs_classify_options {
  const char* refine_width; /* NULL means 1/1000000000 */
  int strict;
  int jobs;
  int recount_budget; /* negative means the default */
  int alternate_samples;
} msrs_classify_options;

MSRS_API void msrs_classify_options_init(msrs_classify_options* o);
MSRS_API msrs_status msrs_classify(const msrs_model* m, const msrs_classify_options* o, msrs_result** out);
MSRS_API void msrs_result_free(msrs_result* r);

MSRS_API size_t msrs_result_boundary_count(const msrs_result* r);
/* lo and hi may be NULL. approx is the interval midpoint. */
MSRS_API msrs_status msrs_result_boundary(const msrs_result* r, size_t k, char** lo, char** hi, double* approx,
                                          msrs_flag* flag);
MSRS_API size_t msrs_result_band_count(const msrs_result* r);
MSRS_API msrs_status msrs_result_band(const msrs_result* r, size_t k, long* e, long* s);
MSRS_API size_t msrs_result_sample_count(const msrs_result* r);
MSRS_API msrs_status msrs_result_sample(const msrs_result* r, size_t k, char** sigma, long* e, long* s);
MSRS_API int msrs_result_B_degree(const msrs_result* r);
/* Nonzero when no kept boundary is flagged MSRS_KEPT_UNVERIFIED. */
MSRS_API int msrs_result_all_verified(const msrs_result* r);
/* seconds: reduction, elimination, isolation, counting */
MSRS_API msrs_status msrs_result_timing(const msrs_result* r, double out[4]);
/* format: "json" or "text" */
MSRS_API msrs_status msrs_result_render(const msrs_result* r, const char* format, int timing, char** out);

MSRS_API msrs_status msrs_count(const msrs_model* m, const char* sigma, int jobs, long* e, long* s);

typedef struct msrs_oracle_options {
  int starts;
  uint64_t seed;
  int jobs;
} msrs_oracle_options;

MSRS_API void msrs_oracle_options_init(msrs_oracle_options* o);
/* Numeric counts at sigma and a JSON report of the theorem checks (may be
 * NULL). theorems_ok is nonzero when no check was violated. */
MSRS_API msrs_status msrs_oracle(const msrs_model* m, const char* sigma, const msrs_oracle_options* o, long* e,
                                 long* s, int* theorems_ok, char** report);

#ifdef __cplusplus
}
#endif

#endif
