/* nlse: low-distortion random embeddings of nonlinearly transformed subspaces.
 *
 * C interface to the core library: opaque handles, integer status codes, and
 * a thread-local message for the most recent failing call.  All functions are
 * deterministic given their seed arguments.  Handles are not thread-safe for
 * concurrent mutation but are safe to use read-only from multiple threads.
 */
#ifndef NLSE_H
#define NLSE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NLSE_API __declspec(dllexport)
#else
#define NLSE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlse_status {
  NLSE_OK = 0,
  NLSE_E_INVALID_ARGUMENT = 1,
  NLSE_E_PRECONDITION = 2,
  NLSE_E_DIMENSION_MISMATCH = 3,
  NLSE_E_NOT_FOUND = 4,
  NLSE_E_RESOURCE = 5,
  NLSE_E_IO = 6,
  NLSE_E_INTERNAL = 7
} nlse_status;

/* Message for the most recent failing call on this thread ("" when none). */
NLSE_API const char* nlse_last_error(void);
NLSE_API const char* nlse_version(void);

/* ==== nonlinearity catalog ================================================ */

NLSE_API int nlse_catalog_count(void);
/* Name of catalog entry `index`, or NULL when out of range. */
NLSE_API const char* nlse_catalog_name(int index);

typedef struct nlse_fixture_info {
  double a;             /* curvature bound: sup |f''| <= a           */
  double b, c;          /* asymptote onset |x| >= c / eps^b          */
  double d1, e1;        /* right asymptote d1*x + e1                 */
  double d2, e2;        /* left  asymptote d2*x + e2                 */
  int has_g;            /* near-origin inverse condition available   */
  double g1, g2, g3;
  int bounded;          /* |f| <= bound everywhere                   */
  double bound;
  int affine;           /* exactly linear                            */
} nlse_fixture_info;

NLSE_API nlse_status nlse_fixture_get(const char* fixture, nlse_fixture_info* out);

typedef struct nlse_cert_result {
  int condition;         /* 1, 2, or 3                               */
  double eps;            /* condition 2 target (NaN for 1 and 3)     */
  double claimed;
  double observed;       /* sup of the checked quantity              */
  double argmax;
  int pass;
  int has_violation;
  double violation_x;
  double violation_value;
} nlse_cert_result;

/* Empirically verifies one regularity condition on a dense grid.
 * `eps` is used by condition 2 only (pass any value otherwise). */
NLSE_API nlse_status nlse_verify_condition(const char* fixture, int condition, double eps,
                                           nlse_cert_result* out);

/* ==== piecewise-linear approximation ====================================== */

typedef struct nlse_pwl nlse_pwl;

NLSE_API nlse_status nlse_pwl_build(const char* fixture, double eps, nlse_pwl** out);
NLSE_API void nlse_pwl_free(nlse_pwl* pwl);
NLSE_API size_t nlse_pwl_piece_count(const nlse_pwl* pwl);
NLSE_API size_t nlse_pwl_breakpoint_count(const nlse_pwl* pwl);
/* Copies knot data.  breakpoints needs breakpoint_count entries; slopes and
 * intercepts need piece_count entries.  Any pointer may be NULL to skip. */
NLSE_API nlse_status nlse_pwl_knots(const nlse_pwl* pwl, double* breakpoints, double* slopes,
                                    double* intercepts);
NLSE_API double nlse_pwl_eval(const nlse_pwl* pwl, double x);
/* Max |f - pwl| over a uniform grid (see header docs for preconditions). */
NLSE_API nlse_status nlse_pwl_uniform_error(const nlse_pwl* pwl, double half_width,
                                            double spacing, double* out);

/* ==== Gaussian sketching ================================================== */

/* mode: "additive", "piecewise", "relative", or "srec".  `t` is the piece
 * count (piecewise mode).  On return *m is clamped into [1, n] and *clamped
 * records whether clamping occurred. */
NLSE_API nlse_status nlse_required_dim(const char* mode, int k, int n, int t, double eps1,
                                       double eps2, double eps, double delta, double C, int* m,
                                       int* clamped);

typedef struct nlse_sketch nlse_sketch;

NLSE_API nlse_status nlse_sketch_sample(int m, int n, uint64_t seed, nlse_sketch** out);
NLSE_API void nlse_sketch_free(nlse_sketch* s);
NLSE_API nlse_status nlse_sketch_dims(const nlse_sketch* s, int* m, int* n);
NLSE_API nlse_status nlse_sketch_apply(const nlse_sketch* s, const double* x, size_t x_len,
                                       double* y, size_t y_len);
NLSE_API nlse_status nlse_sketch_spectral_norm(const nlse_sketch* s, int iters, double* out);

/* ==== linear-region census ================================================ */

typedef struct nlse_region_census {
  int k, n, t;             /* t = piece count of the approximation    */
  long long distinct_patterns;
  double bound;            /* arrangement bound sum C(n*(t-1), i)     */
  long long samples_used;
  int degenerate;
  long long perturbed;
} nlse_region_census;

/* Builds the fixture's PWL approximation at `eps`, draws a seeded random
 * subspace, and runs the census.  method: "exact_1d" or "sign_sample". */
NLSE_API nlse_status nlse_region_census_run(const char* fixture, double eps, int k, int n,
                                            const char* method, long long budget, uint64_t seed,
                                            nlse_region_census* out);

/* ==== generative-model checks ============================================ */

typedef struct nlse_srec_report {
  long long pairs;
  double eps1, eps2;
  double worst_slack;
  int pass;
} nlse_srec_report;

/* Synthesizes a seeded `depth`-layer generator (widths k -> hidden ... -> n,
 * the named activation at every layer), a seeded m x n Gaussian sketch, and
 * checks the pairwise embedding slack over `pairs` mixed-radius pairs. */
NLSE_API nlse_status nlse_srec_check(const char* fixture, int k, int n, int hidden, int depth,
                                     int m, long long pairs, double eps1, double eps2,
                                     uint64_t seed, nlse_srec_report* out);

/* ==== experiment drivers ================================================== */

typedef struct nlse_sweep_summary {
  long long cells;
  long long rows;          /* trial rows written (aggregates excluded) */
  long long cells_failed;
} nlse_sweep_summary;

/* Reads a key=value config, runs the sweep, writes CSV to out_csv_path.
 * A nonzero have_seed_override replaces the config's base_seed. */
NLSE_API nlse_status nlse_run_distortion(const char* config_path, const char* out_csv_path,
                                         int have_seed_override, uint64_t seed_override,
                                         nlse_sweep_summary* out);
NLSE_API nlse_status nlse_run_csgen(const char* config_path, const char* out_csv_path,
                                    int have_seed_override, uint64_t seed_override,
                                    nlse_sweep_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* NLSE_H */
