// SPDX-License-Identifier: Apache-2.0
#include "gft/gft.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "gft/bounds.hpp"
#include "gft/error.hpp"
#include "gft/instance_io.hpp"
#include "gft/ladder.hpp"
#include "gft/mechanisms.hpp"
#include "gft/montecarlo.hpp"
#include "gft/second_best.hpp"

struct gft_distribution {
  gft::Distribution d;
};

struct gft_instance {
  gft_distribution buyer;
  gft_distribution seller;
  gft::AffineMap map;

  gft::Instance get() const { return {buyer.d, seller.d}; }
};

struct gft_ladder {
  gft::QuantileLadder ladder;
};

struct gft_bound_report {
  gft::BoundReport report;
};

namespace {

thread_local std::string last_error;

template <typename Fn>
gft_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return GFT_OK;
  } catch (const gft::Error& e) {
    last_error = e.what();
    return static_cast<gft_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return GFT_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw gft::Error(gft::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gft_instance* wrap(const gft::Instance& inst, const gft::AffineMap& map = {}) {
  return new gft_instance{{inst.buyer}, {inst.seller}, map};
}

}  // namespace

extern "C" {

const char* gft_last_error(void) { return last_error.c_str(); }

const char* gft_status_name(gft_status status) {
  return gft::to_string(static_cast<gft::ErrorCode>(status));
}

const char* gft_version(void) { return "0.1.0"; }

void gft_string_free(char* text) { delete[] text; }

gft_status gft_distribution_create(const double* xs, const double* qs, size_t count,
                                   gft_distribution** out) {
  return guarded([&] {
    require(out, "out");
    if (count > 0) {
      require(xs, "xs");
      require(qs, "qs");
    }
    std::vector<gft::Knot> knots(count);
    for (size_t i = 0; i < count; ++i) knots[i] = {xs[i], qs[i]};
    *out = new gft_distribution{gft::make_piecewise_linear(std::move(knots))};
  });
}

void gft_distribution_destroy(gft_distribution* d) { delete d; }

size_t gft_distribution_knot_count(const gft_distribution* d) {
  return d ? d->d.knots().size() : 0;
}

gft_status gft_distribution_knot(const gft_distribution* d, size_t index, double* x, double* q) {
  return guarded([&] {
    require(d, "distribution");
    if (index >= d->d.knots().size()) {
      throw gft::Error(gft::ErrorCode::OutOfRange, "knot index out of range");
    }
    if (x) *x = d->d.knots()[index].x;
    if (q) *q = d->d.knots()[index].q;
  });
}

gft_status gft_cdf(const gft_distribution* d, double x, double* out) {
  return guarded([&] {
    require(d, "distribution");
    require(out, "out");
    *out = d->d.cdf(x);
  });
}

gft_status gft_quantile(const gft_distribution* d, double q, double* out) {
  return guarded([&] {
    require(d, "distribution");
    require(out, "out");
    *out = d->d.quantile(q);
  });
}

gft_status gft_partial_expectation(const gft_distribution* d, double a, double b, double* out) {
  return guarded([&] {
    require(d, "distribution");
    require(out, "out");
    *out = d->d.partial_expectation(a, b);
  });
}

gft_status gft_sample(const gft_distribution* d, uint64_t seed, size_t n, double* out) {
  return guarded([&] {
    require(d, "distribution");
    require(out, "out");
    const std::vector<double> draws = gft::sample(d->d, seed, n);
    std::copy(draws.begin(), draws.end(), out);
  });
}

gft_status gft_instance_create(const gft_distribution* buyer, const gft_distribution* seller,
                               gft_instance** out) {
  return guarded([&] {
    require(buyer, "buyer");
    require(seller, "seller");
    require(out, "out");
    *out = wrap({buyer->d, seller->d});
  });
}

gft_status gft_instance_from_json(const char* json_text, gft_instance** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    const gft::LoadedInstance loaded = gft::parse_instance(json_text);
    *out = wrap(loaded.instance, loaded.map);
  });
}

gft_status gft_instance_load(const char* path, gft_instance** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    const gft::LoadedInstance loaded = gft::load_instance(path);
    *out = wrap(loaded.instance, loaded.map);
  });
}

void gft_instance_destroy(gft_instance* inst) { delete inst; }

gft_status gft_instance_to_json(const gft_instance* inst, char** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = copy_string(gft::instance_to_json(inst->get(), inst->map));
  });
}

const gft_distribution* gft_instance_buyer(const gft_instance* inst) {
  return inst ? &inst->buyer : nullptr;
}

const gft_distribution* gft_instance_seller(const gft_instance* inst) {
  return inst ? &inst->seller : nullptr;
}

void gft_instance_support(const gft_instance* inst, double* lo, double* hi) {
  if (!inst) return;
  if (lo) *lo = inst->map.lo;
  if (hi) *hi = inst->map.hi;
}

gft_status gft_swap_roles(const gft_instance* inst, gft_instance** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    // Reflection t -> lo + hi - t keeps the support.
    *out = wrap(gft::swap_roles(inst->get()), inst->map);
  });
}

gft_status gft_evaluate(const gft_instance* inst, gft_evaluation* out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    const gft::Instance i = inst->get();
    const gft::FixedPriceOutcome fixed = gft::fixed_price(i);
    const gft::SellerPricingOutcome seller = gft::seller_pricing(i, 0);
    const gft::BuyerPricingOutcome buyer = gft::buyer_pricing(i, 0);
    *out = {gft::first_best(i), fixed.price,    fixed.gft,    fixed.trade_probability,
            seller.gft,         seller.profit, buyer.gft,    buyer.utility};
  });
}

gft_status gft_mixture(const gft_instance* inst, double alpha, double* gft) {
  return guarded([&] {
    require(inst, "instance");
    require(gft, "gft");
    *gft = gft::mixture(inst->get(), alpha).gft;
  });
}

gft_status gft_seller_optimal_price(const gft_distribution* F, double cost, double* price,
                                    double* profit) {
  return guarded([&] {
    require(F, "distribution");
    const gft::PriceResponse r = gft::seller_best_response(F->d, cost);
    if (price) *price = r.price;
    if (profit) *profit = r.payoff;
  });
}

gft_status gft_buyer_optimal_price(const gft_distribution* G, double value, double* price,
                                   double* utility) {
  return guarded([&] {
    require(G, "distribution");
    const gft::PriceResponse r = gft::buyer_best_response(G->d, value);
    if (price) *price = r.price;
    if (utility) *utility = r.payoff;
  });
}

gft_status gft_mu_k(const gft_distribution* F, double lambda, double x, int k, double* out) {
  return guarded([&] {
    require(F, "distribution");
    require(out, "out");
    *out = gft::mu_k(F->d, lambda, x, k);
  });
}

gft_status gft_ladder_build(const gft_distribution* F, double lambda, double c, double eps,
                            gft_ladder** out) {
  return guarded([&] {
    require(F, "distribution");
    require(out, "out");
    *out = new gft_ladder{gft::build_ladder(F->d, lambda, c, eps)};
  });
}

void gft_ladder_destroy(gft_ladder* ladder) { delete ladder; }

size_t gft_ladder_size(const gft_ladder* ladder) { return ladder ? ladder->ladder.size() : 0; }

gft_status gft_ladder_point(const gft_ladder* ladder, size_t k, double* point, double* mass,
                            double* residual_tail) {
  return guarded([&] {
    require(ladder, "ladder");
    const gft::QuantileLadder& l = ladder->ladder;
    if (k >= l.size()) throw gft::Error(gft::ErrorCode::OutOfRange, "ladder index out of range");
    if (point) *point = l.points[k];
    if (mass) *mass = l.interval_mass(k);
    if (residual_tail) *residual_tail = l.tails[k];
  });
}

gft_status gft_bound_terms_at(const gft_distribution* F, double c, double lambda,
                              gft_bound_terms* out) {
  return guarded([&] {
    require(F, "distribution");
    require(out, "out");
    const gft::BoundTerms t = gft::bound_terms(F->d, c, lambda);
    *out = {t.fb, t.sp, t.bp};
  });
}

gft_status gft_verify_pointwise(const gft_instance* inst, double lambda, size_t c_grid,
                                gft_bound_report** out) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    *out = new gft_bound_report{gft::verify_pointwise(inst->get(), lambda, c_grid)};
  });
}

void gft_bound_report_destroy(gft_bound_report* report) { delete report; }

size_t gft_bound_report_size(const gft_bound_report* report) {
  return report ? report->report.rows.size() : 0;
}

gft_status gft_bound_report_row(const gft_bound_report* report, size_t index,
                                gft_bound_row* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (index >= report->report.rows.size()) {
      throw gft::Error(gft::ErrorCode::OutOfRange, "row index out of range");
    }
    const gft::BoundRow& r = report->report.rows[index];
    *out = {r.c, r.fb_c, r.sp_c, r.bp_c, r.bound_rhs, r.slack};
  });
}

void gft_bound_report_summary(const gft_bound_report* report, gft_bound_summary* out) {
  if (!report || !out) return;
  const gft::BoundReport& r = report->report;
  *out = {r.lambda,
          r.coefficients.seller,
          r.coefficients.buyer,
          {r.aggregate.fb, r.aggregate.sp, r.aggregate.bp},
          r.min_slack,
          r.first_best,
          r.seller_gft,
          r.buyer_gft,
          r.rows_hold() ? 1 : 0,
          r.aggregates_hold() ? 1 : 0};
}

gft_status gft_ratio_bound(double lambda, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = gft::ratio_bound(lambda);
  });
}

gft_status gft_optimal_lambda(double* lambda_star, double* bound) {
  return guarded([&] {
    const gft::LambdaOptimum opt = gft::optimal_lambda();
    if (lambda_star) *lambda_star = opt.lambda;
    if (bound) *bound = opt.bound;
  });
}

gft_status gft_search_worst_case(size_t trials, uint64_t seed, size_t knot_budget,
                                 gft_instance** out, double* ratio, size_t* best_trial) {
  return guarded([&] {
    require(out, "out");
    const gft::SearchResult r = gft::search_worst_case(trials, seed, knot_budget);
    *out = wrap(r.instance);
    if (ratio) *ratio = r.ratio;
    if (best_trial) *best_trial = r.best_trial;
  });
}

gft_status gft_second_best(const gft_instance* inst, size_t n, size_t m,
                           gft_second_best_report* out, char** lp_text) {
  return guarded([&] {
    require(inst, "instance");
    require(out, "out");
    const gft::DiscreteInstance d = gft::discretize(inst->get(), n, m);
    const gft::SecondBestLp lp = gft::build_lp(d);
    gft::SecondBestResult result;
    result.instance = d;
    result.solution = gft::solve_lp(lp);
    result.benchmarks = gft::discrete_benchmarks(d);
    bool monotone = true;
    if (result.solution.status == gft::SbStatus::Optimal) {
      const std::vector<double> interim = result.solution.interim_buyer_trade(d);
      for (size_t i = 1; i < interim.size(); ++i) {
        if (interim[i] < interim[i - 1] - 1e-7) monotone = false;
      }
    }
    *out = {static_cast<gft_sb_status>(result.solution.status),
            result.solution.sb,
            result.benchmarks.fb,
            result.benchmarks.sp,
            result.benchmarks.bp,
            result.solution.max_violation,
            result.solution.iterations,
            result.sandwich_holds() ? 1 : 0,
            monotone ? 1 : 0};
    if (lp_text) *lp_text = copy_string(gft::export_lp(lp));
  });
}

gft_status gft_simulate(const gft_instance* inst, const char* mechanism, size_t n, uint64_t seed,
                        gft_sim_report* out) {
  return guarded([&] {
    require(inst, "instance");
    require(mechanism, "mechanism");
    require(out, "out");
    const gft::SimReport r = gft::simulate(inst->get(), gft::parse_mechanism(mechanism), n, seed);
    *out = {r.mean,
            r.stderr_,
            r.analytic,
            r.z,
            r.trade_frequency,
            r.n,
            r.budget_violations,
            r.ir_violations,
            r.flagged() ? 1 : 0};
  });
}

}  // extern "C"
