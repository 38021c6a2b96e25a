// SPDX-License-Identifier: Apache-2.0
// gftlab: command-line front end over the libgft C API.
//
// Exit codes: 0 success, 1 bad input or failed computation, 2 a checked
// property did not hold.
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gft/gft.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitViolation = 2;

struct Failure {
  gft_status status;
  std::string message;
};

void check(gft_status status) {
  if (status != GFT_OK) throw Failure{status, gft_last_error()};
}

struct InstanceDeleter {
  void operator()(gft_instance* p) const { gft_instance_destroy(p); }
};
using InstancePtr = std::unique_ptr<gft_instance, InstanceDeleter>;

struct Loaded {
  InstancePtr inst;
  double lo = 0.0;
  double hi = 1.0;

  double scale() const { return hi - lo; }
  double from_unit(double u) const { return lo + u * (hi - lo); }
  double to_unit(double t) const { return (t - lo) / (hi - lo); }
};

Loaded load(const std::string& path) {
  gft_instance* raw = nullptr;
  check(gft_instance_load(path.c_str(), &raw));
  Loaded out{InstancePtr(raw)};
  gft_instance_support(raw, &out.lo, &out.hi);
  return out;
}

ordered_json instance_json(const gft_instance* inst) {
  char* text = nullptr;
  check(gft_instance_to_json(inst, &text));
  ordered_json j = ordered_json::parse(text);
  gft_string_free(text);
  return j;
}

void print(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

int run_evaluate(const std::string& path) {
  const Loaded l = load(path);
  gft_evaluation e{};
  check(gft_evaluate(l.inst.get(), &e));
  const double s = l.scale();
  const double best = std::max({e.fixed_gft, e.seller_gft, e.buyer_gft});
  ordered_json out;
  out["fb"] = e.first_best * s;
  out["fixedp"] = {{"p", l.from_unit(e.fixed_price)},
                   {"gft", e.fixed_gft * s},
                   {"trade_probability", e.fixed_trade_probability}};
  out["sellerp"] = {{"gft", e.seller_gft * s}, {"profit", e.seller_profit * s}};
  out["buyerp"] = {{"gft", e.buyer_gft * s}, {"utility", e.buyer_utility * s}};
  out["ratios"] = {{"fb_over_best", ratio(e.first_best, best)},
                   {"fb_over_fixedp", ratio(e.first_best, e.fixed_gft)}};
  print(out);
  return kExitOk;
}

int run_verify(const std::string& path, double lambda, std::size_t c_grid,
               const std::string& format) {
  const Loaded l = load(path);
  gft_bound_report* raw = nullptr;
  check(gft_verify_pointwise(l.inst.get(), lambda, c_grid, &raw));
  std::unique_ptr<gft_bound_report, void (*)(gft_bound_report*)> report(raw,
                                                                        gft_bound_report_destroy);
  gft_bound_summary sum{};
  gft_bound_report_summary(raw, &sum);
  const double s = l.scale();

  ordered_json summary;
  summary["lambda"] = sum.lambda;
  summary["coefficients"] = {{"sp", sum.seller_coefficient}, {"bp", sum.buyer_coefficient}};
  summary["rows"] = gft_bound_report_size(raw);
  summary["min_slack"] = sum.min_slack * s;
  summary["aggregate"] = {{"fb", sum.aggregate.fb * s},
                          {"sp", sum.aggregate.sp * s},
                          {"bp", sum.aggregate.bp * s}};
  summary["mechanisms"] = {
      {"fb", sum.first_best * s}, {"sellerp", sum.seller_gft * s}, {"buyerp", sum.buyer_gft * s}};
  summary["rows_hold"] = sum.rows_hold != 0;
  summary["aggregates_hold"] = sum.aggregates_hold != 0;

  ordered_json rows = ordered_json::array();
  if (format == "csv") std::cout << "c,fb_c,sp_c,bp_c,bound_rhs,slack\n";
  for (std::size_t i = 0; i < gft_bound_report_size(raw); ++i) {
    gft_bound_row r{};
    check(gft_bound_report_row(raw, i, &r));
    const double c = l.from_unit(r.c);
    if (format == "csv") {
      std::printf("%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", c, r.fb_c * s, r.sp_c * s, r.bp_c * s,
                  r.bound_rhs * s, r.slack * s);
    } else {
      rows.push_back({{"c", c},
                      {"fb_c", r.fb_c * s},
                      {"sp_c", r.sp_c * s},
                      {"bp_c", r.bp_c * s},
                      {"bound_rhs", r.bound_rhs * s},
                      {"slack", r.slack * s}});
    }
  }
  if (format == "csv") {
    std::cout << "\n" << summary.dump() << "\n";
  } else {
    print({{"rows", rows}, {"summary", summary}});
  }
  if (!sum.rows_hold || !sum.aggregates_hold) {
    std::cerr << "gftlab: bound violated (min slack " << sum.min_slack * s << ")\n";
    return kExitViolation;
  }
  return kExitOk;
}

int run_ladder(const std::string& path, double lambda, std::optional<double> c, double eps) {
  const Loaded l = load(path);
  const double start = c ? l.to_unit(*c) : 0.0;
  gft_ladder* raw = nullptr;
  check(gft_ladder_build(gft_instance_buyer(l.inst.get()), lambda, start, eps, &raw));
  std::unique_ptr<gft_ladder, void (*)(gft_ladder*)> ladder(raw, gft_ladder_destroy);
  std::cout << "k,point,mass,residual_tail\n";
  for (std::size_t k = 0; k < gft_ladder_size(raw); ++k) {
    double point = 0.0, mass = 0.0, tail = 0.0;
    check(gft_ladder_point(raw, k, &point, &mass, &tail));
    std::printf("%zu,%.17g,%.17g,%.17g\n", k, l.from_unit(point), mass, tail);
  }
  return kExitOk;
}

int run_lambda_opt() {
  double lambda = 0.0, bound = 0.0;
  check(gft_optimal_lambda(&lambda, &bound));
  print({{"lambda_star", lambda}, {"bound", bound}});
  return kExitOk;
}

int run_second_best(const std::string& path, const std::vector<std::size_t>& grid,
                    const std::string& export_path) {
  const Loaded l = load(path);
  gft_second_best_report r{};
  char* lp = nullptr;
  check(gft_second_best(l.inst.get(), grid[0], grid[1], &r, export_path.empty() ? nullptr : &lp));
  if (lp != nullptr) {
    std::ofstream file(export_path);
    file << lp;
    gft_string_free(lp);
    if (!file) throw Failure{GFT_IO, "cannot write " + export_path};
  }
  const char* status = r.status == GFT_SB_OPTIMAL      ? "optimal"
                       : r.status == GFT_SB_INFEASIBLE ? "infeasible"
                                                       : "unbounded-guard";
  const double s = l.scale();
  ordered_json out;
  out["sb"] = r.sb * s;
  out["fb_d"] = r.fb_d * s;
  out["sp_d"] = r.sp_d * s;
  out["bp_d"] = r.bp_d * s;
  out["status"] = status;
  out["max_violation"] = r.max_violation;
  out["iterations"] = r.iterations;
  out["sandwich_holds"] = r.sandwich_holds != 0;
  out["monotone"] = r.monotone != 0;
  print(out);
  if (r.status != GFT_SB_OPTIMAL || !r.sandwich_holds || !r.monotone) {
    std::cerr << "gftlab: second-best checks failed\n";
    return kExitViolation;
  }
  return kExitOk;
}

int run_sample(const std::string& path, const std::string& mechanism, std::size_t n,
               std::uint64_t seed) {
  const Loaded l = load(path);
  gft_sim_report r{};
  check(gft_simulate(l.inst.get(), mechanism.c_str(), n, seed, &r));
  const double s = l.scale();
  ordered_json out;
  out["mechanism"] = mechanism;
  out["n"] = r.n;
  out["seed"] = seed;
  out["mean"] = r.mean * s;
  out["stderr"] = r.stderr_ * s;
  out["analytic"] = r.analytic * s;
  out["z"] = r.z;
  out["flagged"] = r.flagged != 0;
  out["trade_frequency"] = r.trade_frequency;
  out["budget_violations"] = r.budget_violations;
  out["ir_violations"] = r.ir_violations;
  print(out);
  if (r.budget_violations != 0 || r.ir_violations != 0) {
    std::cerr << "gftlab: simulation audit found violations\n";
    return kExitViolation;
  }
  return kExitOk;
}

int run_search(std::size_t trials, std::uint64_t seed, std::size_t knots) {
  gft_instance* raw = nullptr;
  double found = 0.0;
  std::size_t best_trial = 0;
  check(gft_search_worst_case(trials, seed, knots, &raw, &found, &best_trial));
  const InstancePtr inst(raw);
  double lambda = 0.0, bound = 0.0;
  check(gft_optimal_lambda(&lambda, &bound));
  ordered_json out;
  out["instance"] = instance_json(inst.get());
  out["ratio"] = found;
  out["best_trial"] = best_trial;
  out["bound"] = bound;
  print(out);
  if (found > bound + 1e-6) {
    std::cerr << "gftlab: observed ratio exceeds the proven bound\n";
    return kExitViolation;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gains-from-trade laboratory for bilateral trade"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gft_version());

  std::string path;
  const auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", path, "Instance JSON file")->required();
  };

  auto* evaluate = app.add_subcommand("evaluate", "First best, fixed price, seller and buyer pricing");
  add_instance(evaluate);

  double lambda = 0.5;
  std::size_t c_grid = 100;
  std::string format = "csv";
  auto* verify = app.add_subcommand("verify", "Check the per-cost bound on a G-quantile grid");
  add_instance(verify);
  verify->add_option("--lambda", lambda, "Quantile parameter in (0,1)");
  verify->add_option("--c-grid", c_grid, "Number of cost rows")->check(CLI::Range(2, 1000000));
  verify->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::optional<double> ladder_c;
  double eps = 1e-12;
  auto* ladder = app.add_subcommand("ladder", "Quantile ladder of the buyer distribution");
  add_instance(ladder);
  ladder->add_option("--lambda", lambda, "Quantile parameter in (0,1)");
  ladder->add_option("--c", ladder_c, "Starting cost (default: bottom of the support)");
  ladder->add_option("--eps", eps, "Residual tail mass at which generation stops");

  auto* lambda_opt = app.add_subcommand("lambda-opt", "Minimize the approximation factor over lambda");

  std::vector<std::size_t> grid{20, 20};
  std::string export_path;
  auto* second = app.add_subcommand("second-best", "Solve the discretized second-best LP");
  add_instance(second);
  second->add_option("--grid", grid, "Buyer and seller grid sizes")
      ->expected(2)
      ->check(CLI::PositiveNumber);
  second->add_option("--export-lp", export_path, "Write the LP model to this path");

  std::string mechanism;
  std::size_t n = 1000000;
  std::uint64_t seed = 1;
  auto* sample = app.add_subcommand("sample", "Monte Carlo estimate of a mechanism's GFT");
  add_instance(sample);
  sample->add_option("--mechanism", mechanism,
                     "first-best | fixed | seller | buyer | mixture[:alpha]")
      ->required();
  sample->add_option("-n", n, "Sample count (at least 1000)");
  sample->add_option("--seed", seed, "Master seed");

  std::size_t trials = 200;
  std::size_t knots = 6;
  auto* search = app.add_subcommand("search", "Random-restart search for a bad instance");
  search->add_option("--trials", trials, "Number of restarts")->check(CLI::PositiveNumber);
  search->add_option("--seed", seed, "Master seed");
  search->add_option("--knots", knots, "Knots per distribution")->check(CLI::Range(2, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*evaluate) return run_evaluate(path);
    if (*verify) return run_verify(path, lambda, c_grid, format);
    if (*ladder) return run_ladder(path, lambda, ladder_c, eps);
    if (*lambda_opt) return run_lambda_opt();
    if (*second) return run_second_best(path, grid, export_path);
    if (*sample) return run_sample(path, mechanism, n, seed);
    if (*search) return run_search(trials, seed, knots);
  } catch (const Failure& f) {
    std::cerr << "gftlab: " << gft_status_name(f.status) << ": " << f.message << "\n";
    return kExitInput;
  }
  return kExitInput;
}
