/* C interface to the mld1 library.
 *
 * Conventions: every function that can fail returns an mld1_status;
 * MLD1_OK means the out-parameters are filled. On failure,
 * mld1_last_error() describes what went wrong (thread-local storage, valid
 * until the next failing call on the same thread). Strings returned
 * through char** are heap-allocated and must be released with
 * mld1_string_free(); handles with their matching *_free(). Rational
 * arguments and results travel as text, "p/q" or a bare integer.
 */
#ifndef MLD1_H
#define MLD1_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mld1_status {
  MLD1_OK = 0,
  MLD1_ERR_CONTRACT = 1, /* an operation's requirement was violated */
  MLD1_ERR_INPUT = 2,    /* malformed text or out-of-range argument */
  MLD1_ERR_BUDGET = 3,   /* search node budget exhausted */
} mld1_status;

const char* mld1_last_error(void);
void mld1_string_free(char* s);

typedef struct mld1_model mld1_model;
typedef struct mld1_catalog mld1_catalog;
typedef struct mld1_family mld1_family;

/* ---- models: construction ------------------------------------------- */

/* Parses "nu mu coefficient" lines and validates the model laws
 * (distinct non-origin pairs, positive coefficients, sum identically one).
 * Malformed text gives MLD1_ERR_INPUT, a law violation MLD1_ERR_CONTRACT. */
mld1_status mld1_model_parse(const char* text, mld1_model** out);
mld1_status mld1_model_binomial(int n, mld1_model** out);
mld1_status mld1_model_geometric(int n, mld1_model** out);
mld1_status mld1_model_sharp(int n, mld1_model** out);
/* The image of the model under t -> 1-t (exponent pairs transposed). */
mld1_status mld1_model_swap(const mld1_model* m, mld1_model** out);
/* Grafts b onto a's top corner (deg a, 0), which must carry coefficient
 * one; mld1_compose_at grafts at any pair holding coefficient >= 1. */
mld1_status mld1_compose(const mld1_model* a, const mld1_model* b,
                         mld1_model** out);
mld1_status mld1_compose_at(const mld1_model* a, const mld1_model* b, int nu,
                            int mu, mld1_model** out);
/* Moves `amount` of mass from the pairs (nu+1, mu) and (nu, mu+1) onto
 * (nu, mu); both source coefficients must cover it. */
mld1_status mld1_unsplit(const mld1_model* m, int nu, int mu,
                         const char* amount, mld1_model** out);
void mld1_model_free(mld1_model* m);

/* ---- models: inspection ---------------------------------------------- */

int mld1_model_n(const mld1_model* m);
int mld1_model_degree(const mld1_model* m);
/* Canonical "nu mu coefficient" lines; re-parses to an equal model. */
mld1_status mld1_model_format(const mld1_model* m, char** out);
/* The polynomial sum c_i x^nu_i y^mu_i as one-line text. */
mld1_status mld1_model_poly(const mld1_model* m, char** out);
/* Sign triangle of the cofactor of f - 1, rows from high y-power down. */
mld1_status mld1_model_diagram(const mld1_model* m, char** out);
/* Coefficient triangle of the cofactor, "." for zero. */
mld1_status mld1_model_chips(const mld1_model* m, char** out);
/* Space-separated "(nu,mu)" lists. */
mld1_status mld1_model_sinks(const mld1_model* m, char** out);
mld1_status mld1_model_sources(const mld1_model* m, char** out);
/* Maximum-likelihood parameter for comma-separated counts ("3,1,1"),
 * one nonnegative rational per state in canonical entry order, not all
 * zero. */
mld1_status mld1_model_mle(const mld1_model* m, const char* counts,
                           char** out);

/* ---- reports ---------------------------------------------------------- */

/* Full validation report for model text: each law's status, degree,
 * rank/nullity of the support, fundamentality, diagram structure. *ok is 1
 * exactly when everything holds. Only malformed text fails the call. */
mld1_status mld1_check_model(const char* text, char** report, int* ok);
/* The same report for a bare support, "nu,mu;nu,mu;...": solves for the
 * scalings first; *ok is 1 when some model lives on the support. */
mld1_status mld1_check_support(const char* support, char** report, int* ok);
/* Scaling solver. *ok as above; when a model exists and witness is
 * non-NULL, *witness receives it (a fundamental model's only scaling, or
 * one point of a positive-dimensional family). */
mld1_status mld1_solve_support(const char* support, char** report, int* ok,
                               mld1_model** witness);

/* ---- enumeration ------------------------------------------------------ */

#define MLD1_PRUNE_WINDOW (1u << 0)
#define MLD1_PRUNE_ANCHORS (1u << 1)
#define MLD1_PRUNE_SHARP (1u << 2)
#define MLD1_PRUNE_RANK (1u << 3)
#define MLD1_PRUNE_FEASIBLE (1u << 4)
#define MLD1_PRUNE_ALL 0x1fu

typedef struct mld1_search {
  int n;
  int d;
  int collect;                    /* keep models, not only counts */
  int workers;                    /* 0 or 1 = serial */
  unsigned long long node_budget; /* 0 = default (10^9 nodes) */
  unsigned int prune_mask;        /* MLD1_PRUNE_* bits */
} mld1_search;

/* Every fundamental model on n+1 states of degree exactly d, in canonical
 * order. MLD1_ERR_BUDGET when the walk outgrows node_budget. */
mld1_status mld1_enumerate(const mld1_search* spec, mld1_catalog** out);
void mld1_catalog_free(mld1_catalog* c);
unsigned long long mld1_catalog_count(const mld1_catalog* c);
unsigned long long mld1_catalog_swap_classes(const mld1_catalog* c);
/* Models actually held (0 when collect was off). */
int mld1_catalog_size(const mld1_catalog* c);
mld1_status mld1_catalog_model(const mld1_catalog* c, int index,
                               mld1_model** out);
mld1_status mld1_catalog_format(const mld1_catalog* c, char** out);

/* Recounts the census for 1 <= n <= max_n against the stored reference.
 * *ok is 1 when every cell matches; the report has one line per cell. */
mld1_status mld1_verify_table(int max_n, int workers,
                              unsigned long long node_budget, char** report,
                              int* ok);
/* Checks the composition bound on the almost-sharp count at n (counting
 * the sharp cells below n by search); *ok is 1 when the bound holds. */
mld1_status mld1_verify_recursive(int n, int workers, char** report,
                                  int* ok);

/* ---- one-parameter families ------------------------------------------ */

/* Degree-d family on n+1 states, one free parameter 0 < c < 1; needs
 * n >= 4 and n <= d <= 2n-4. */
mld1_status mld1_family_create(int n, int d, mld1_family** out);
void mld1_family_free(mld1_family* f);
int mld1_family_n(const mld1_family* f);
int mld1_family_degree(const mld1_family* f);
/* Terms with coefficients affine in c. */
mld1_status mld1_family_format(const mld1_family* f, char** out);
/* The member at c (rational text strictly between 0 and 1). */
mld1_status mld1_family_instantiate(const mld1_family* f, const char* c,
                                    mld1_model** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MLD1_H */
