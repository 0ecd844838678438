/* clickstate: ensemble statistics from detector clicks, the emergent
 * pair-number algebra, and the state space assembled on top of it.
 *
 * C surface of the shared library. All structured data crosses this
 * boundary as JSON text (counts as decimal strings, rationals as
 * {"num","den"}); sessions are opaque handles. Every function returns a
 * cst_status; on CST_ERR_INVALID the thread-local message from
 * cst_last_error() names the violated invariant. Strings returned through
 * char** out-parameters are heap-allocated and must be released with
 * cst_string_free().
 */
#ifndef CLICKSTATE_H
#define CLICKSTATE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cst_status {
    CST_OK = 0,           /* ran, and any verdict carried by the result passed */
    CST_VERDICT_FAIL = 1, /* ran to completion, but the report's verdict is negative */
    CST_ERR_INVALID = 2,  /* precondition or invariant violation; see cst_last_error() */
    CST_ERR_INTERNAL = 3  /* unexpected failure inside the library */
} cst_status;

typedef struct cst_session cst_session;

const char* cst_version(void);

/* Thread-local message describing the most recent failure on this thread. */
const char* cst_last_error(void);

void cst_string_free(char* text);

/* --- sessions ---------------------------------------------------------- */

/* config_json: {"dimension":2,"default_seed":7,"instruments":[...],
 *               "basis_changes":[...]}; validated on load. */
cst_status cst_session_open(const char* config_json, cst_session** out);
void cst_session_close(cst_session* session);
cst_status cst_session_describe(const cst_session* session, char** config_json_out);

/* --- ensembles --------------------------------------------------------- */

/* spec_json: {"nu":[rationals],"sigma":"1000000","instrument":"A"}.
 * Emits one JSON record per line; a fixed (spec, seed) always yields a
 * byte-identical stream. */
cst_status cst_simulate_clicks(const char* spec_json, uint64_t seed, char** jsonl_out);

/* kappa_json: array of rationals, one per instrument outcome. */
cst_status cst_ingest_clicks(const cst_session* session, const char* instrument_id,
                             const char* clicks_jsonl, const char* kappa_json,
                             char** brace_json_out);

cst_status cst_extract_stats(const char* brace_json, char** stats_json_out);

cst_status cst_union_braces(const char* brace_a_json, const char* brace_b_json,
                            char** brace_json_out);

/* factor: positive rational literal such as "3" or "5/2". */
cst_status cst_replicate_brace(const char* brace_json, const char* factor,
                               char** brace_json_out);

/* mixture_json: {"components":[{"brace":...,"weight":...}...]}. Returns
 * {"outcomes":[...],"nu":[...]}. */
cst_status cst_mix_braces(const char* mixture_json, char** result_json_out);

/* --- pair-number algebra ----------------------------------------------- */

/* Randomized exact verification of the field axioms and involution laws.
 * Returns CST_VERDICT_FAIL when any check fails. */
cst_status cst_verify_algebra(uint32_t trials, uint64_t seed, char** report_json_out);

/* Enumerates the 16 candidate multiplication rules and reports the
 * survivors. CST_VERDICT_FAIL when the standard rule does not survive or
 * the survivors span more than one isomorphism class. */
cst_status cst_ansatz_search(uint32_t trials, uint64_t seed, char** report_json_out);

/* Nested-set encoding of n (n <= 12): {"n","cardinality","rendering","set"}. */
cst_status cst_ordinal(uint32_t n, char** json_out);

/* --- state space -------------------------------------------------------- */

/* Vector-space axiom suite at the session dimension. */
cst_status cst_verify_lvs(const cst_session* session, uint32_t trials, uint64_t seed,
                          char** report_json_out);

/* state_json: {"basis":"A","coords":[{"n":...,"m":...}...]}. The state is
 * converted through a registered basis change when its basis differs from
 * the instrument's. */
cst_status cst_measure(const cst_session* session, const char* state_json,
                       const char* instrument_id, char** result_json_out);

/* mixture_json: {"components":[{"state":...,"weight":...}...]}. */
cst_status cst_measure_mixture(const cst_session* session, const char* mixture_json,
                               const char* instrument_id, char** result_json_out);

/* --- experiments --------------------------------------------------------- */

/* Interference demo over the registered change from_id -> to_id at
 * dimension 2. coeffs_json: array of two pair numbers. */
cst_status cst_two_slit(const cst_session* session, const char* from_id, const char* to_id,
                        const char* coeffs_json, char** report_json_out);

cst_status cst_classical_positivity(uint32_t trials, uint64_t seed, char** report_json_out);

/* nu_json: array of rationals; schedule_json: strictly increasing array of
 * positive integers. */
cst_status cst_convergence(const char* nu_json, const char* schedule_json, uint64_t seed,
                           char** report_json_out);

#ifdef __cplusplus
}
#endif

#endif /* CLICKSTATE_H */
