/* torsionlab C API: exact verification of torsion catalogs for elliptic
 * curves over number fields, modular-curve families with extra endomorphisms,
 * finite-field point-count experiments, and stage-1 ECM factoring.
 *
 * All functions are thread-compatible: a context may be used from one thread
 * at a time, distinct contexts are independent.  Strings returned through
 * out-parameters are heap-allocated and must be released with tl_free().
 */
#ifndef TORSIONLAB_H
#define TORSIONLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tl_ctx tl_ctx;

typedef enum {
    TL_OK = 0,          /* operation succeeded and all checks passed */
    TL_EVERIFY = 1,     /* operation ran but a mathematical check failed */
    TL_EINPUT = 2,      /* malformed input, unknown name, missing file */
    TL_EINTERNAL = 3    /* unexpected failure; see tl_last_error */
} tl_status;

/* data_dir: directory holding the table/curve catalogs (NULL = "data"). */
tl_ctx* tl_ctx_new(const char* data_dir);
void tl_ctx_free(tl_ctx* ctx);

/* worker threads used by partitionable operations (default 1) */
void tl_ctx_set_jobs(tl_ctx* ctx, int jobs);

/* message describing the most recent failure on this context */
const char* tl_last_error(const tl_ctx* ctx);

void tl_free(char* s);

/* Every operation fills text_out (human-readable report) and json_out
 * (machine-readable sidecar); either pointer may be NULL if unwanted. */

/* tables_csv: e.g. "1,2,3" or "all" */
tl_status tl_verify_tables(tl_ctx* ctx, const char* tables_csv, char** text_out, char** json_out);

/* curve: "x1_13" or "x1_18"; p == 0 selects the stock prime (2 resp. 5) */
tl_status tl_zeta(tl_ctx* ctx, const char* curve, long p, char** text_out, char** json_out);

/* numerator reconstruction from externally supplied counts (self-test aid) */
tl_status tl_zeta_synthetic(tl_ctx* ctx, uint64_t n1, uint64_t n2, uint64_t q,
                            char** text_out, char** json_out);

/* n: 13 or 18; c: rational parameter "p/q"; verify != 0 also runs the
 * extra-endomorphism identity t^2 = a on the fiber */
tl_status tl_family(tl_ctx* ctx, int n, const char* c, int verify, char** text_out, char** json_out);

/* n: 13, 16 or 18; input: a rational c (families) or a named curve */
tl_status tl_false_cm(tl_ctx* ctx, int n, const char* input, int samples,
                      char** text_out, char** json_out);

/* curves_csv: named rational curves, e.g. "E1,E2,E3"; hi_index: primes p with
 * 30 < p < p_hi_index; bounds_csv: smoothness bounds, e.g. "100,200" */
tl_status tl_smoothness(tl_ctx* ctx, const char* curves_csv, uint64_t hi_index,
                        const char* bounds_csv, char** text_out, char** json_out);

/* splitting-class divisibility table for the curve "E1" */
tl_status tl_densities(tl_ctx* ctx, const char* curve, uint64_t hi_index,
                       char** text_out, char** json_out);

/* n_decimal: integer to factor; curve_spec: named curve ("E3"), family fiber
 * ("family:13,2"); returns TL_EVERIFY when no factor is found */
tl_status tl_ecm(tl_ctx* ctx, const char* n_decimal, uint64_t b1, const char* curve_spec,
                 char** text_out, char** json_out);

/* runs the stage-1 fixture set shipped in ecm_demo.json */
tl_status tl_ecm_demo(tl_ctx* ctx, char** text_out, char** json_out);

tl_status tl_selftest(tl_ctx* ctx, char** text_out, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* TORSIONLAB_H */
