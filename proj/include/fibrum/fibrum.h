/* fibrum C API: exact computations with A-fibered bisets over finite groups.
 *
 * All functions return FIBRUM_OK on success. On failure they return an error
 * code and leave a message retrievable through fibrum_last_error() (thread
 * local). Strings returned through char** are heap-allocated JSON documents;
 * release them with fibrum_string_free(). Opaque handles are released with
 * their matching _free function.
 */
#ifndef FIBRUM_H
#define FIBRUM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  FIBRUM_OK = 0,
  FIBRUM_ERR_ARGUMENT = 1,     /* malformed input or JSON */
  FIBRUM_ERR_PRECONDITION = 2, /* documented precondition violated */
  FIBRUM_ERR_RESOURCE = 3,     /* configured size bound exceeded */
  FIBRUM_ERR_INTERNAL = 4      /* a structural guarantee failed */
} fibrum_status;

typedef struct fibrum_group fibrum_group;
typedef struct fibrum_element fibrum_element;

const char* fibrum_version(void);
const char* fibrum_last_error(void);
void fibrum_string_free(char* s);

/* ---- groups ---- */
fibrum_status fibrum_group_build(const char* spec, fibrum_group** out);
fibrum_status fibrum_group_from_json(const char* json, fibrum_group** out);
fibrum_status fibrum_group_to_json(const fibrum_group* g, char** out_json);
int fibrum_group_order(const fibrum_group* g);
void fibrum_group_free(fibrum_group* g);

/* ---- elements of B^A(G,H) ---- */
fibrum_status fibrum_element_from_json(const char* json, fibrum_element** out);
fibrum_status fibrum_element_to_json(const fibrum_element* x, char** out_json);
fibrum_status fibrum_element_product(const fibrum_element* x,
                                     const fibrum_element* y,
                                     fibrum_element** out);
void fibrum_element_free(fibrum_element* x);

/* ---- computations; all results are JSON documents ---- */
fibrum_status fibrum_standard_basis(const fibrum_group* g, const fibrum_group* h,
                                    long long n, char** out_json);
fibrum_status fibrum_idem_report(const fibrum_group* g, long long n,
                                 int check_blocks, char** out_json);
/* triple documents: {"g": <spec or Cayley doc>, "n": N, "pair_index": i}
 * or explicit {"g": ..., "n": N, "k": [indices], "kappa": [residues]} */
fibrum_status fibrum_mgg_list(const fibrum_group* g, long long n, char** out_json);
fibrum_status fibrum_linkage(const char* triple_a, const char* triple_b,
                             char** out_json);
fibrum_status fibrum_gamma_report(const char* triple, char** out_json);
fibrum_status fibrum_ses_report(const char* triple, char** out_json);
/* catalog_json may be NULL (use the built-in catalog of orders <= 15) */
fibrum_status fibrum_reduced_report(const fibrum_group* g, long long n,
                                    const char* catalog_json, char** out_json);
fibrum_status fibrum_squeeze_report(const char* triple, char** out_json);
/* pair document as in the README; full != 0 gives the seven-factor form */
fibrum_status fibrum_decompose(const char* pair_json, int full, char** out_json);
/* quadruple: {"triple": {...}, "p": prime, "module": "trivial" | {...}} */
fibrum_status fibrum_simple_eval(const char* quadruple_json, const char* group_spec,
                                 char** out_json);
fibrum_status fibrum_linearize(const char* element_json, long long p,
                               char** out_json);
fibrum_status fibrum_simplicity_probe(const char* group_specs_json, long long n,
                                      char** out_json);
fibrum_status fibrum_burnside_kernel(int p, char** out_json);
fibrum_status fibrum_h2(const fibrum_group* q, const char* factors_json,
                        char** out_json);

/* ---- verification suites ----
 * suite: one of mackey, idem, covering, ses, c4, q8d8, squeeze, decompose,
 * alphan, simple, quadruple, burnside, or "all".
 * config_json (optional): {"seed": u, "samples": n}. The report lists one
 * pass/fail entry per criterion; status is FIBRUM_OK even for failing
 * criteria (the report carries the outcome). */
fibrum_status fibrum_verify(const char* suite, const char* config_json,
                            char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* FIBRUM_H */
