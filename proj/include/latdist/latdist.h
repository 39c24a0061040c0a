/* latdist: exact lattice reduction, distortion bounds, and problem gadgets.
 *
 * C interface to the shared library.  All functions are thread-safe; the
 * last-error message is thread-local.  Every char* returned through an out
 * parameter is owned by the caller and must be released with
 * latdist_string_free; every latdist_matrix* with latdist_matrix_free.
 * Rational values cross the boundary as canonical strings like "-3/4".
 * Report payloads are JSON text. */

#ifndef LATDIST_H
#define LATDIST_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct latdist_matrix latdist_matrix;

typedef enum latdist_status {
    LATDIST_OK = 0,
    LATDIST_ERR_PARSE = 1,
    LATDIST_ERR_BAD_ARGUMENT = 2,
    LATDIST_ERR_RANK_DEFICIENT = 3,
    LATDIST_ERR_SINGULAR = 4,
    LATDIST_ERR_BUDGET_EXCEEDED = 5,
    LATDIST_ERR_NON_DIVIDING = 6,
    LATDIST_ERR_NOT_UNIPOTENT = 7,
    LATDIST_ERR_INVALID_GAMMA = 8,
    LATDIST_ERR_NO_WITNESS = 9,
    LATDIST_ERR_VIOLATION = 10,
    LATDIST_ERR_INTERNAL = 11
} latdist_status;

/* Library version, a static string; do not free. */
const char* latdist_version(void);

/* Message for the most recent failure on this thread; static storage,
 * do not free.  Empty string if no failure has occurred. */
const char* latdist_last_error(void);

void latdist_string_free(char* s);
void latdist_matrix_free(latdist_matrix* m);

/* Parses a matrix from text: either the JSON object format
 * {"n":…, "basis":[[…]], "label":…} with rational-string entries, or a
 * bare whitespace grid of integers.  Columns are the basis vectors and
 * must be linearly independent. */
latdist_status latdist_matrix_parse(const char* text, latdist_matrix** out);

/* Builds a matrix from rows*cols rational strings in row-major order. */
latdist_status latdist_matrix_from_entries(int rows, int cols,
                                           const char* const* entries,
                                           latdist_matrix** out);

/* Renders the matrix in the JSON object format.  label may be NULL. */
latdist_status latdist_matrix_to_json(const latdist_matrix* m,
                                      const char* label, char** out_json);

int latdist_matrix_rows(const latdist_matrix* m);
int latdist_matrix_cols(const latdist_matrix* m);

/* Entry (row, col) as a canonical rational string. */
latdist_status latdist_matrix_entry(const latdist_matrix* m, int row, int col,
                                    char** out_text);

/* Label carried from the source file; static within the handle, do not
 * free.  Empty string when absent. */
const char* latdist_matrix_label(const latdist_matrix* m);

/* Basis reduction.  algo is one of "size", "lll", "hkz", "dsvp", "slide",
 * "seysen", "pipeline".  delta (rational string, LLL only) and eps
 * (rational string, slide only) may be NULL for the defaults 3/4 and
 * 1/10; k is the block size for slide and pipeline (ignored otherwise);
 * budget caps enumeration nodes, 0 meaning the built-in default.  On
 * success *out_basis holds the reduced basis and *out_report a JSON
 * object with the transform, certificate check, and the eta, S, and
 * S-prime measurements before and after. */
latdist_status latdist_reduce(const latdist_matrix* in, const char* algo,
                              const char* delta, const char* eps, int k,
                              uint64_t budget, latdist_matrix** out_basis,
                              char** out_report);

/* Distortion between the lattices spanned by a and b.  Emits the mapping
 * (square case), the unimodular witness, the condition-number upper
 * bound, and, when with_lower is nonzero, the exact squared lower bound
 * together with both squared M-factors. */
latdist_status latdist_distortion(const latdist_matrix* a,
                                  const latdist_matrix* b, int k,
                                  int with_lower, uint64_t budget,
                                  char** out_report);

/* Gap decision: YES when the certified upper bound is at most c (rational
 * string), NO when the exact lower bound exceeds gamma*c, UNKNOWN
 * otherwise.  The verdict is payload, not an error. */
latdist_status latdist_decide(const latdist_matrix* a, const latdist_matrix* b,
                              const char* c, double gamma, int k,
                              uint64_t budget, char** out_report);

/* Builds the two-lattice distortion instance from a closest-vector
 * instance: basis, target (target_len rational strings), distance bound d
 * (squared when d_is_squared is nonzero), and the promise factor gamma.
 * The report carries both output bases and the trace values r and c. */
latdist_status latdist_gadget_cvp2ldp(const latdist_matrix* basis,
                                      const char* const* target,
                                      int target_len, const char* d,
                                      int d_is_squared, double gamma,
                                      uint64_t budget, char** out_report);

/* Builds the batch of closest-vector instances equivalent to a shortest
 * vector question (lattice, bound d as a rational string, factor gamma).
 * The report carries every instance plus the trace block (p, r,
 * gamma_prime, d_prime_sq). */
latdist_status latdist_gadget_svp2cvp(const latdist_matrix* basis,
                                      const char* d, double gamma,
                                      char** out_report);

/* The dense unit-determinant family: 1 on the diagonal, -1/2 above. */
latdist_status latdist_luk_tracy(int n, latdist_matrix** out);

/* Random n x n integer basis with entries in [-entry_bound, entry_bound],
 * resampled until nonsingular.  Deterministic in seed. */
latdist_status latdist_random_lattice(int n, int entry_bound, uint64_t seed,
                                      latdist_matrix** out);

/* Exact oracles.  op is one of "svp", "cvp", "minima", "transference";
 * cvp takes the target as target_len rational strings (others pass
 * NULL, 0).  budget caps enumeration nodes, 0 meaning the default. */
latdist_status latdist_oracle(const latdist_matrix* basis, const char* op,
                              const char* const* target, int target_len,
                              uint64_t budget, char** out_report);

/* Measurement suites: "luktracy-growth", "seysen-zeta", "transference",
 * "sandwich".  Dimensions n_min..n_max, trials per dimension where
 * randomness applies; has_seed must be nonzero for the randomized
 * suites.  The report is a table of rows plus a summary. */
latdist_status latdist_bench(const char* suite, int n_min, int n_max,
                             int trials, uint64_t seed, int has_seed,
                             uint64_t budget, char** out_report);

#ifdef __cplusplus
}
#endif

#endif /* LATDIST_H */
