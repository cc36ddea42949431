/* coarse - large-scale geometry of finitely generated groups.
 *
 * C interface to the shared library.  All functions return a status code;
 * COARSE_OK is 0.  On failure coarse_last_error() returns a thread-local
 * message describing what went wrong.  Strings returned through char**
 * output parameters are heap-allocated and must be released with
 * coarse_string_free().
 *
 * Handles are opaque.  A handle may carry internal caches that grow on use;
 * sharing one handle across threads is not supported, everything else is.
 */
#ifndef COARSE_H
#define COARSE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef COARSE_API
#if defined(_WIN32)
#define COARSE_API __declspec(dllexport)
#else
#define COARSE_API __attribute__((visibility("default")))
#endif
#endif

typedef enum coarse_status {
  COARSE_OK = 0,
  COARSE_ERR_USAGE = 1,         /* bad arguments / unknown name */
  COARSE_ERR_BUDGET = 2,        /* exploration node cap exceeded */
  COARSE_ERR_ASSERTION = 3,     /* a verification scenario assertion failed */
  COARSE_ERR_PARSE = 4,         /* malformed spec or element text */
  COARSE_ERR_DOMAIN = 5,        /* invalid value for the operation */
  COARSE_ERR_NOT_GENERATED = 6, /* element unreachable from the generating set */
  COARSE_ERR_OVERFLOW = 7,      /* 64-bit element arithmetic overflowed */
  COARSE_ERR_INTERNAL = 8
} coarse_status;

COARSE_API const char* coarse_version(void);
COARSE_API const char* coarse_status_name(coarse_status status);

/* Thread-local message for the most recent failure on this thread. */
COARSE_API const char* coarse_last_error(void);

COARSE_API void coarse_string_free(char* s);

/* ---- groups ---------------------------------------------------------- */

typedef struct coarse_group coarse_group;

/* Specs: "z", "zd:2", "dinf", "cmz2:4", "free:2". */
COARSE_API coarse_status coarse_group_parse(const char* spec, coarse_group** out);
COARSE_API void coarse_group_free(coarse_group* g);
COARSE_API coarse_status coarse_group_to_string(const coarse_group* g, char** out);

/* Element grammar: z "7"; zd "(3,-4)"; dinf "(r^1,5)"; cmz2 "(t^1,(2,-3))";
 * free reduced words "abA" ("1" is the identity). */
COARSE_API coarse_status coarse_element_multiply(const coarse_group* g, const char* a, const char* b, char** out);
COARSE_API coarse_status coarse_element_invert(const coarse_group* g, const char* a, char** out);

/* ---- length functions ------------------------------------------------ */

typedef struct coarse_length coarse_length;

/* Specs: "l1", "l2", "linf", "wnorm:3,1", "word:GENS", "smooth:BASE:r",
 * "scale:BASE:lambda".  GENS is "std" or a comma-separated element list. */
COARSE_API coarse_status coarse_length_parse(const coarse_group* g, const char* spec, coarse_length** out);
COARSE_API void coarse_length_free(coarse_length* l);

/* max_nodes = 0 restores the default (5e6, or COARSE_BUDGET from the
 * environment).  Applies to subsequent exploration on this handle. */
COARSE_API void coarse_length_set_budget(coarse_length* l, uint64_t max_nodes);

COARSE_API coarse_status coarse_length_evaluate(coarse_length* l, const char* element, double* out);

/* CSV with header "element,length", one row per element, sorted by
 * (length, canonical key). */
COARSE_API coarse_status coarse_ball_csv(coarse_length* l, double radius, char** out);
COARSE_API coarse_status coarse_annulus_csv(coarse_length* l, double lo, double hi, char** out);

/* ---- asymptotics ------------------------------------------------------ */

/* format: 0 = JSON (stable schema), 1 = CSV (one annulus per row). */
COARSE_API coarse_status coarse_ratio_report(coarse_length* l1, coarse_length* l2, double r_max, double width,
                                             double r_min, int format, char** out);

/* window = 0 picks ceil(#annuli/4). */
COARSE_API coarse_status coarse_alpha_json(coarse_length* l1, coarse_length* l2, double r_max, double width,
                                           double r_min, int window, char** out);

COARSE_API coarse_status coarse_diameter_json(coarse_length* const* lengths, size_t count, double r_max,
                                              double width, double r_min, int window, char** out);

COARSE_API coarse_status coarse_smooth_conv_json(coarse_length* l, const double* schedule, size_t count,
                                                 double ball_radius, char** out);

COARSE_API coarse_status coarse_word_conv_json(coarse_length* l, const double* schedule, size_t count,
                                               double r_max, char** out);

/* ---- finite metric spaces --------------------------------------------- */

typedef struct coarse_space coarse_space;

/* Specs: "grid:l1:21", "grid:l2:41", "grid:linf:21", "tree:3:6", "cycle:10". */
COARSE_API coarse_status coarse_space_create(const char* spec, coarse_space** out);
/* CSV distance matrix, optionally preceded by a label row. */
COARSE_API coarse_status coarse_space_from_csv(const char* csv_text, coarse_space** out);
COARSE_API void coarse_space_free(coarse_space* s);

COARSE_API coarse_status coarse_chains_json(const coarse_space* s, const double* radii, size_t count,
                                            int random_pairs, uint64_t seed, double interior_margin, char** out);

/* action_spec: "translations", "translations+rot4", "rotations", or
 * "csv:" followed by one permutation per line. */
COARSE_API coarse_status coarse_homog_json(const coarse_space* s, const char* action_spec, int quad_samples,
                                           uint64_t seed, double interior_margin, char** out);

/* ---- verification scenarios ------------------------------------------- */

/* Newline-separated scenario ids. */
COARSE_API coarse_status coarse_scenario_list(char** out);

/* params_json is optional (NULL or "{}"); recognised keys: rmax, width,
 * window, budget, seed, gens, margin, slack.  The report JSON is written to
 * *out in every case that produces one; the return value is COARSE_OK when
 * all assertions pass and COARSE_ERR_ASSERTION when at least one fails. */
COARSE_API coarse_status coarse_verify_json(const char* scenario_id, const char* params_json, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* COARSE_H */
