/* SPDX-License-Identifier: Apache-2.0 */
/* C interface to libgft. All handles are opaque; every call that can fail
 * returns a gft_status and leaves a message for gft_last_error(). */
#ifndef GFT_GFT_H
#define GFT_GFT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GFT_BUILDING_LIBRARY)
#    define GFT_API __declspec(dllexport)
#  else
#    define GFT_API __declspec(dllimport)
#  endif
#else
#  define GFT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gft_status {
  GFT_OK = 0,
  GFT_NON_MONOTONE = 1,
  GFT_BAD_ENDPOINTS = 2,
  GFT_TOO_FEW_KNOTS = 3,
  GFT_OUT_OF_SUPPORT = 4,
  GFT_OUT_OF_RANGE = 5,
  GFT_BAD_RANGE = 6,
  GFT_DEGENERATE_TRUNCATION = 7,
  GFT_DEGENERATE_SUPPORT = 8,
  GFT_BAD_LAMBDA = 9,
  GFT_DEGENERATE_START = 10,
  GFT_BAD_ALPHA = 11,
  GFT_UNKNOWN_MECHANISM = 12,
  GFT_NUMERICAL_INSTABILITY = 13,
  GFT_INVALID_ARGUMENT = 14,
  GFT_PARSE = 15,
  GFT_IO = 16,
  GFT_INTERNAL = 17
} gft_status;

typedef struct gft_distribution gft_distribution;
typedef struct gft_instance gft_instance;
typedef struct gft_ladder gft_ladder;
typedef struct gft_bound_report gft_bound_report;

/* Message of the last failure on the calling thread ("" if none). */
GFT_API const char* gft_last_error(void);
GFT_API const char* gft_status_name(gft_status status);
GFT_API const char* gft_version(void);

/* Strings returned through char** out-parameters. */
GFT_API void gft_string_free(char* text);

/* ---- distributions ---------------------------------------------------- */

/* xs and qs hold `count` knots of a CDF on [0, 1]. */
GFT_API gft_status gft_distribution_create(const double* xs, const double* qs, size_t count,
                                           gft_distribution** out);
GFT_API void gft_distribution_destroy(gft_distribution* d);
GFT_API size_t gft_distribution_knot_count(const gft_distribution* d);
GFT_API gft_status gft_distribution_knot(const gft_distribution* d, size_t index, double* x,
                                         double* q);
GFT_API gft_status gft_cdf(const gft_distribution* d, double x, double* out);
GFT_API gft_status gft_quantile(const gft_distribution* d, double q, double* out);
GFT_API gft_status gft_partial_expectation(const gft_distribution* d, double a, double b,
                                           double* out);
/* Writes n inverse-transform draws into out. */
GFT_API gft_status gft_sample(const gft_distribution* d, uint64_t seed, size_t n, double* out);

/* ---- instances -------------------------------------------------------- */

/* Copies both distributions; the support map is the identity. */
GFT_API gft_status gft_instance_create(const gft_distribution* buyer,
                                       const gft_distribution* seller, gft_instance** out);
GFT_API gft_status gft_instance_from_json(const char* json_text, gft_instance** out);
GFT_API gft_status gft_instance_load(const char* path, gft_instance** out);
GFT_API void gft_instance_destroy(gft_instance* inst);
GFT_API gft_status gft_instance_to_json(const gft_instance* inst, char** out);
/* Borrowed views valid for the instance's lifetime. */
GFT_API const gft_distribution* gft_instance_buyer(const gft_instance* inst);
GFT_API const gft_distribution* gft_instance_seller(const gft_instance* inst);
/* Original support [lo, hi]; all analytics run on [0, 1]. */
GFT_API void gft_instance_support(const gft_instance* inst, double* lo, double* hi);
GFT_API gft_status gft_swap_roles(const gft_instance* inst, gft_instance** out);

/* ---- mechanisms (unit scale) ------------------------------------------ */

typedef struct gft_evaluation {
  double first_best;
  double fixed_price;
  double fixed_gft;
  double fixed_trade_probability;
  double seller_gft;
  double seller_profit;
  double buyer_gft;
  double buyer_utility;
} gft_evaluation;

GFT_API gft_status gft_evaluate(const gft_instance* inst, gft_evaluation* out);
GFT_API gft_status gft_mixture(const gft_instance* inst, double alpha, double* gft);
GFT_API gft_status gft_seller_optimal_price(const gft_distribution* F, double cost,
                                            double* price, double* profit);
GFT_API gft_status gft_buyer_optimal_price(const gft_distribution* G, double value,
                                           double* price, double* utility);

/* ---- ladder ----------------------------------------------------------- */

GFT_API gft_status gft_mu_k(const gft_distribution* F, double lambda, double x, int k,
                            double* out);
GFT_API gft_status gft_ladder_build(const gft_distribution* F, double lambda, double c, double eps,
                                    gft_ladder** out);
GFT_API void gft_ladder_destroy(gft_ladder* ladder);
GFT_API size_t gft_ladder_size(const gft_ladder* ladder);
/* mass is the F-mass of [point_k, point_{k+1}), or the residual tail for the
 * last point. */
GFT_API gft_status gft_ladder_point(const gft_ladder* ladder, size_t k, double* point,
                                    double* mass, double* residual_tail);

/* ---- bounds ----------------------------------------------------------- */

typedef struct gft_bound_terms {
  double fb;
  double sp;
  double bp;
} gft_bound_terms;

typedef struct gft_bound_row {
  double c;
  double fb_c;
  double sp_c;
  double bp_c;
  double bound_rhs;
  double slack;
} gft_bound_row;

typedef struct gft_bound_summary {
  double lambda;
  double seller_coefficient;
  double buyer_coefficient;
  gft_bound_terms aggregate;
  double min_slack;
  double first_best;
  double seller_gft;
  double buyer_gft;
  int rows_hold;
  int aggregates_hold;
} gft_bound_summary;

GFT_API gft_status gft_bound_terms_at(const gft_distribution* F, double c, double lambda,
                                      gft_bound_terms* out);
GFT_API gft_status gft_verify_pointwise(const gft_instance* inst, double lambda, size_t c_grid,
                                        gft_bound_report** out);
GFT_API void gft_bound_report_destroy(gft_bound_report* report);
GFT_API size_t gft_bound_report_size(const gft_bound_report* report);
GFT_API gft_status gft_bound_report_row(const gft_bound_report* report, size_t index,
                                        gft_bound_row* out);
GFT_API void gft_bound_report_summary(const gft_bound_report* report, gft_bound_summary* out);

GFT_API gft_status gft_ratio_bound(double lambda, double* out);
GFT_API gft_status gft_optimal_lambda(double* lambda_star, double* bound);
/* On success *out owns the worst instance found. */
GFT_API gft_status gft_search_worst_case(size_t trials, uint64_t seed, size_t knot_budget,
                                         gft_instance** out, double* ratio, size_t* best_trial);

/* ---- second best ------------------------------------------------------ */

typedef enum gft_sb_status {
  GFT_SB_OPTIMAL = 0,
  GFT_SB_INFEASIBLE = 1,
  GFT_SB_UNBOUNDED_GUARD = 2
} gft_sb_status;

typedef struct gft_second_best_report {
  gft_sb_status status;
  double sb;
  double fb_d;
  double sp_d;
  double bp_d;
  double max_violation;
  size_t iterations;
  int sandwich_holds;
  /* Interim buyer trade probability nondecreasing in the value. */
  int monotone;
} gft_second_best_report;

/* lp_text, when non-null, receives the exported model (free with
 * gft_string_free). */
GFT_API gft_status gft_second_best(const gft_instance* inst, size_t n, size_t m,
                                   gft_second_best_report* out, char** lp_text);

/* ---- Monte Carlo ------------------------------------------------------ */

typedef struct gft_sim_report {
  double mean;
  double stderr_;
  double analytic;
  double z;
  double trade_frequency;
  size_t n;
  size_t budget_violations;
  size_t ir_violations;
  int flagged;
} gft_sim_report;

/* mechanism: "first-best", "fixed", "seller", "buyer", "mixture" or
 * "mixture:<alpha>". */
GFT_API gft_status gft_simulate(const gft_instance* inst, const char* mechanism, size_t n,
                                uint64_t seed, gft_sim_report* out);

#ifdef __cplusplus
}
#endif

#endif /* GFT_GFT_H */
