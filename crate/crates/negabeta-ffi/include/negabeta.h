/* C interface of the negabeta library. Generated by cbindgen; do not edit. */

#ifndef NEGABETA_H
#define NEGABETA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Operation selector for the fractional-length queries.
typedef enum NbOp {
  NB_OP_SUB = 0,
  NB_OP_ADD = 1,
} NbOp;

// Status code returned by every fallible entry point.
typedef enum NbStatus {
  NB_STATUS_OK = 0,
  NB_STATUS_NULL_ARGUMENT = 1,
  NB_STATUS_INVALID_UTF8 = 2,
  NB_STATUS_PARSE_ERROR = 3,
  NB_STATUS_NO_ROOT_ABOVE_ONE = 4,
  NB_STATUS_OUT_OF_DOMAIN = 5,
  NB_STATUS_BUDGET_EXCEEDED = 6,
  NB_STATUS_CAP_EXCEEDED = 7,
  NB_STATUS_INVALID_ARGUMENT = 8,
  NB_STATUS_INTERNAL_ERROR = 9,
} NbStatus;

// Opaque handle to an isolated base.
typedef struct NbBase NbBase;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *nb_version(void);

// Short human-readable message for a status code; static, do not free.
const char *nb_status_message(enum NbStatus status);

// Creates a base from "1,-1,-1,-1" style coefficients (highest degree
// first). On success writes a handle that must be released with
// `nb_base_free`.
enum NbStatus nb_base_new(const char *poly, bool pisot_check, struct NbBase **out);

// Releases a base handle; null is ignored.
void nb_base_free(struct NbBase *base);

// Degree of the defining polynomial; 0 on null.
uintptr_t nb_base_degree(const struct NbBase *base);

// Whether the Pisot check was requested and succeeded.
bool nb_base_is_pisot(const struct NbBase *base);

// Decides the negative finiteness property. Writes a JSON object
// {"verdict": ..., "certificate": ..., "pisot_certified": ...}; release
// the string with `nb_string_free`.
enum NbStatus nb_finiteness_json(const struct NbBase *base, uintptr_t cap, char **out_json);

// Expansion of an element given in "c0 + c1*b + c2*b^2" form. Writes a
// JSON object {"expansion": {...}, "text": ..., "fr": n|null}.
enum NbStatus nb_expand_json(const struct NbBase *base, const char *expr, char **out_json);

// Fractional length of an element's expansion; writes -1 when the
// expansion is not eventually zero.
enum NbStatus nb_fr_length(const struct NbBase *base, const char *expr, int64_t *out_fr);

// Certified maximal fractional length of x op y over the
// (-beta)-integers of x^3 - m x^2 - m x - m.
enum NbStatus nb_frmax(int64_t m, enum NbOp op, uint64_t *out);

// Brute-force search over (-beta)-integers of length at most `depth`;
// a lower bound for the certified value.
enum NbStatus nb_frmax_oracle(int64_t m, uintptr_t depth, enum NbOp op, uint64_t *out);

// Releases a string returned by this library; null is ignored.
void nb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NEGABETA_H */
