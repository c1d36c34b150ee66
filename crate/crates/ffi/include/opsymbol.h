#ifndef OPSYMBOL_H
#define OPSYMBOL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Value written by [`opsym_operator_pson_order`] for the zero operator.
 */
#define OPSYM_ORDER_NEG_INF INT64_MIN

typedef enum OpsymStatus {
  OPSYM_STATUS_OK = 0,
  OPSYM_STATUS_NULL_POINTER = 1,
  OPSYM_STATUS_INVALID_UTF8 = 2,
  OPSYM_STATUS_PARSE = 3,
  OPSYM_STATUS_SCHEMA = 4,
  OPSYM_STATUS_DIMENSION_MISMATCH = 5,
  OPSYM_STATUS_BELOW_ORDER = 6,
  OPSYM_STATUS_ZERO_OPERATOR = 7,
  OPSYM_STATUS_NON_HOMOGENEOUS = 8,
  OPSYM_STATUS_NOT_INVERTIBLE = 9,
  OPSYM_STATUS_NONZERO_TRACE = 10,
  OPSYM_STATUS_SINGULAR = 11,
  OPSYM_STATUS_CONFIG = 12,
  /**
   * The verification run completed but at least one property failed.
   */
  OPSYM_STATUS_VERIFY_FAILED = 13,
  OPSYM_STATUS_PANIC = 14,
} OpsymStatus;

/**
 * Opaque matrix-coefficient differential operator.
 */
typedef struct OpsymOperator OpsymOperator;

/**
 * Opaque element of the symbol algebra.
 */
typedef struct OpsymSymbol OpsymSymbol;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or NULL if the
 * last call succeeded. The pointer stays valid until the next call into this
 * library from the same thread.
 */
const char *opsym_last_error_message(void);

/**
 * Releases a string produced by this library. NULL is ignored.
 *
 * # Safety
 * `text` must come from this library and must not be freed twice.
 */
void opsym_string_free(char *text);

/**
 * Library version as a static NUL-terminated string.
 */
const char *opsym_version(void);

/**
 * Parses an operator from its JSON form.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be writable.
 */
enum OpsymStatus opsym_operator_from_json(const char *json, struct OpsymOperator **out);

/**
 * Canonical JSON for an operator.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
enum OpsymStatus opsym_operator_to_json(const struct OpsymOperator *op, char **out);

/**
 * # Safety
 * `op` must be NULL or a handle not yet freed.
 */
void opsym_operator_free(struct OpsymOperator *op);

/**
 * `a ∘ b`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum OpsymStatus opsym_operator_compose(const struct OpsymOperator *a,
                                        const struct OpsymOperator *b,
                                        struct OpsymOperator **out);

/**
 * `[a, b] = a ∘ b − b ∘ a`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum OpsymStatus opsym_operator_commutator(const struct OpsymOperator *a,
                                           const struct OpsymOperator *b,
                                           struct OpsymOperator **out);

/**
 * Least `k` with the operator in `P^k`, or [`OPSYM_ORDER_NEG_INF`].
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
enum OpsymStatus opsym_operator_pson_order(const struct OpsymOperator *op, int64_t *out);

/**
 * Symbol of degree `degree` of an operator in `P^degree`.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
enum OpsymStatus opsym_operator_sigma(const struct OpsymOperator *op,
                                      int64_t degree,
                                      struct OpsymSymbol **out);

/**
 * Principal symbol at the operator's own order.
 *
 * # Safety
 * `op` must be a live handle; `out` must be writable.
 */
enum OpsymStatus opsym_operator_sigma_pson(const struct OpsymOperator *op,
                                           struct OpsymSymbol **out);

/**
 * Parses a symbol from its JSON form.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out` must be writable.
 */
enum OpsymStatus opsym_symbol_from_json(const char *json, struct OpsymSymbol **out);

/**
 * Canonical JSON for a symbol.
 *
 * # Safety
 * `sym` must be a live handle; `out` must be writable.
 */
enum OpsymStatus opsym_symbol_to_json(const struct OpsymSymbol *sym, char **out);

/**
 * # Safety
 * `sym` must be NULL or a handle not yet freed.
 */
void opsym_symbol_free(struct OpsymSymbol *sym);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum OpsymStatus opsym_symbol_product(const struct OpsymSymbol *a,
                                      const struct OpsymSymbol *b,
                                      struct OpsymSymbol **out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum OpsymStatus opsym_symbol_bracket(const struct OpsymSymbol *a,
                                      const struct OpsymSymbol *b,
                                      struct OpsymSymbol **out);

/**
 * Multiplicative inverse of `u + f` with `u` in the ideal and `f` a nonzero
 * constant. Anything else fails with [`OpsymStatus::NotInvertible`].
 *
 * # Safety
 * `sym` must be a live handle; `out` must be writable.
 */
enum OpsymStatus opsym_symbol_invert(const struct OpsymSymbol *sym, struct OpsymSymbol **out);

/**
 * Scalar principal symbol summed over all degrees, as a canonical
 * polynomial string.
 *
 * # Safety
 * `sym` must be a live handle; `out` must be writable.
 */
enum OpsymStatus opsym_symbol_delta(const struct OpsymSymbol *sym, char **out);

/**
 * Whether the symbol lies in the ideal `J` of square-zero elements.
 *
 * # Safety
 * `sym` must be a live handle; `out` must be writable.
 */
enum OpsymStatus opsym_symbol_is_in_j(const struct OpsymSymbol *sym, bool *out);

/**
 * Runs a verification suite and writes its JSON report to `out`.
 *
 * `suite` uses the CLI names (`all`, `ideal`, `morphism`, ...). The report
 * is written whenever the run completes. The status is
 * [`OpsymStatus::VerifyFailed`] if any property failed.
 *
 * # Safety
 * `suite` must be a valid NUL-terminated string; `out` must be writable.
 */
enum OpsymStatus opsym_verify_suite(const char *suite,
                                    uint64_t seed,
                                    size_t base_dim,
                                    size_t rank,
                                    size_t trials,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OPSYMBOL_H */
