// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace gft {

enum class RowSense { GreaterEqual, LessEqual };

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
};

struct LpTerm {
  std::size_t var;
  double coef;
};

struct LpRow {
  std::string name;
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::GreaterEqual;
  double rhs = 0.0;
};

// Maximize objective . x subject to rows and finite variable boxes.
struct LpModel {
  std::vector<LpVariable> variables;
  std::vector<double> objective;
  std::vector<LpRow> rows;

  std::size_t add_variable(std::string name, double lower, double upper, double cost = 0.0);
  void add_row(LpRow row) { rows.push_back(std::move(row)); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;
  std::vector<double> values;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pricing_tol = 1e-11;
  double pivot_tol = 1e-9;
  // Basic variables may drift this far outside their bounds mid-solve.
  double feas_tol = 1e-10;
  // Consecutive degenerate pivots tolerated under largest-coefficient
  // pricing before falling back to Bland's rule.
  std::size_t degenerate_limit = 50;
  std::size_t refresh_interval = 200;
  std::size_t max_iterations = 2'000'000;
};

// Dense-tableau primal simplex with bounded variables.
//
// Variables straddling zero are split into positive and negative parts;
// others are shifted to a zero lower bound. The shifted origin must satisfy
// every row (it is the starting basis); otherwise InvalidArgument is thrown.
// Throws NumericalInstability when the tableau loses accuracy.
LpSolution solve_lp(const LpModel& model, const SimplexOptions& options = {});

// Largest violation of any row or variable bound by `values`.
double max_violation(const LpModel& model, std::span<const double> values);

double objective_value(const LpModel& model, std::span<const double> values);

// CPLEX LP text format: Maximize / Subject To / Bounds / End.
std::string export_lp(const LpModel& model, const std::string& comment = {});

}  // namespace gft
