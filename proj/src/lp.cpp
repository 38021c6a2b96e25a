// SPDX-License-Identifier: Apache-2.0
#include "gft/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "gft/error.hpp"

namespace gft {

std::size_t LpModel::add_variable(std::string name, double lower, double upper, double cost) {
  variables.push_back({std::move(name), lower, upper});
  objective.push_back(cost);
  return variables.size() - 1;
}

double objective_value(const LpModel& model, std::span<const double> values) {
  double sum = 0.0;
  for (std::size_t k = 0; k < model.objective.size(); ++k) sum += model.objective[k] * values[k];
  return sum;
}

double max_violation(const LpModel& model, std::span<const double> values) {
  double worst = 0.0;
  for (std::size_t k = 0; k < model.variables.size(); ++k) {
    worst = std::max(worst, model.variables[k].lower - values[k]);
    worst = std::max(worst, values[k] - model.variables[k].upper);
  }
  for (const LpRow& row : model.rows) {
    double lhs = 0.0;
    for (const LpTerm& t : row.terms) lhs += t.coef * values[t.var];
    const double gap = row.sense == RowSense::GreaterEqual ? row.rhs - lhs : lhs - row.rhs;
    worst = std::max(worst, gap);
  }
  return worst;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Internal column j stands for sign * (model variable) - offset, living in
// [0, upper].
struct Column {
  std::size_t var;
  double sign;
  double upper;
};

class Tableau {
 public:
  Tableau(const LpModel& model, const SimplexOptions& options) : opt_(options) {
    const std::size_t nvars = model.variables.size();
    offset_.assign(nvars, 0.0);
    std::vector<std::vector<std::size_t>> cols_of(nvars);
    for (std::size_t k = 0; k < nvars; ++k) {
      const LpVariable& v = model.variables[k];
      if (!std::isfinite(v.lower) || !std::isfinite(v.upper) || v.lower > v.upper) {
        throw Error(ErrorCode::InvalidArgument, "variable " + v.name + " needs a finite box");
      }
      if (v.lower < 0.0 && v.upper > 0.0) {
        cols_of[k].push_back(add_column({k, 1.0, v.upper}));
        cols_of[k].push_back(add_column({k, -1.0, -v.lower}));
      } else {
        offset_[k] = v.lower;
        cols_of[k].push_back(add_column({k, 1.0, v.upper - v.lower}));
      }
    }
    structural_ = cols_.size();
    rows_ = model.rows.size();
    width_ = structural_ + rows_;
    t_.assign(rows_ * width_, 0.0);
    rhs_.assign(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const LpRow& row = model.rows[i];
      // Rows are scaled to unit largest coefficient.
      double scale = 0.0;
      for (const LpTerm& term : row.terms) scale = std::max(scale, std::abs(term.coef));
      if (scale == 0.0) scale = 1.0;
      const double flip = (row.sense == RowSense::GreaterEqual ? -1.0 : 1.0) / scale;
      double rhs = flip * row.rhs;
      for (const LpTerm& term : row.terms) {
        rhs -= flip * term.coef * offset_[term.var];
        for (std::size_t j : cols_of[term.var]) {
          at(i, j) += flip * term.coef * cols_[j].sign;
        }
      }
      if (rhs * scale < -1e-12) {
        throw Error(ErrorCode::InvalidArgument,
                    "row " + row.name + " is violated at the starting vertex");
      }
      rhs_[i] = std::max(rhs, 0.0);
      at(i, structural_ + i) = 1.0;
    }
    original_.resize(structural_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < structural_; ++j) {
        if (at(i, j) != 0.0) original_[j].emplace_back(i, at(i, j));
      }
    }
    upper_.resize(width_);
    cost_.assign(width_, 0.0);
    for (std::size_t j = 0; j < structural_; ++j) {
      upper_[j] = cols_[j].upper;
      cost_[j] = model.objective[cols_[j].var] * cols_[j].sign;
    }
    std::fill(upper_.begin() + static_cast<std::ptrdiff_t>(structural_), upper_.end(), kInf);
    reduced_ = cost_;
    at_upper_.assign(width_, false);
    basic_row_.assign(width_, -1);
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      basis_[i] = structural_ + i;
      basic_row_[structural_ + i] = static_cast<long>(i);
    }
    beta_ = rhs_;
  }

  LpStatus run(std::size_t& iterations) {
    std::size_t degenerate_run = 0;
    for (iterations = 0; iterations < opt_.max_iterations; ++iterations) {
      const bool bland = degenerate_run >= opt_.degenerate_limit;
      const long entering = choose_entering(bland);
      if (entering < 0) {
        refresh();
        if (choose_entering(true) < 0) return LpStatus::Optimal;
        continue;
      }
      const auto j = static_cast<std::size_t>(entering);
      const double dir = at_upper_[j] ? -1.0 : 1.0;

      // Harris ratio test: bound the step with every limit relaxed by
      // feas_tol, then among rows blocking within that step take the largest
      // pivot (or, under Bland, the smallest basic index).
      const auto limit_of = [&](std::size_t i, double alpha, double slack) {
        if (alpha > opt_.pivot_tol) return (beta_[i] + slack) / alpha;
        if (alpha < -opt_.pivot_tol && std::isfinite(upper_[basis_[i]])) {
          return (upper_[basis_[i]] - beta_[i] + slack) / -alpha;
        }
        return kInf;
      };
      double relaxed = kInf;
      for (std::size_t i = 0; i < rows_; ++i) {
        relaxed = std::min(relaxed, limit_of(i, dir * at(i, j), opt_.feas_tol));
      }
      long leave = -1;
      double step = kInf;
      double leave_alpha = 0.0;
      if (upper_[j] <= relaxed) {
        step = upper_[j];
      } else {
        for (std::size_t i = 0; i < rows_; ++i) {
          const double alpha = dir * at(i, j);
          const double limit = limit_of(i, alpha, 0.0);
          if (!(limit <= relaxed)) continue;
          const bool take = leave < 0 || (bland ? basis_[i] < basis_[leave]
                                                : std::abs(alpha) > std::abs(leave_alpha));
          if (take) {
            leave = static_cast<long>(i);
            leave_alpha = alpha;
            step = std::max(limit, 0.0);
          }
        }
      }
      if (leave < 0 && !std::isfinite(step)) return LpStatus::Unbounded;

      degenerate_run = step < 1e-12 ? degenerate_run + 1 : 0;
      for (std::size_t i = 0; i < rows_; ++i) beta_[i] -= dir * step * at(i, j);

      if (leave < 0) {
        at_upper_[j] = !at_upper_[j];
        continue;
      }
      const auto r = static_cast<std::size_t>(leave);
      const std::size_t out = basis_[r];
      at_upper_[out] = leave_alpha < 0.0;
      const double entering_value = (at_upper_[j] ? upper_[j] : 0.0) + dir * step;
      at_upper_[j] = false;
      pivot(r, j);
      beta_[r] = entering_value;
      if ((iterations + 1) % opt_.refresh_interval == 0) refresh();
    }
    throw Error(ErrorCode::NumericalInstability, "simplex iteration limit reached");
  }

  std::vector<double> model_values(std::size_t nvars) const {
    std::vector<double> x(offset_.begin(), offset_.begin() + static_cast<std::ptrdiff_t>(nvars));
    for (std::size_t j = 0; j < structural_; ++j) x[cols_[j].var] += cols_[j].sign * value(j);
    return x;
  }

 private:
  std::size_t add_column(Column c) {
    cols_.push_back(c);
    return cols_.size() - 1;
  }

  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  double value(std::size_t j) const {
    if (basic_row_[j] >= 0) return beta_[static_cast<std::size_t>(basic_row_[j])];
    return at_upper_[j] ? upper_[j] : 0.0;
  }

  long choose_entering(bool bland) const {
    long best = -1;
    double best_score = 0.0;
    for (std::size_t j = 0; j < width_; ++j) {
      if (basic_row_[j] >= 0) continue;
      const double d = reduced_[j];
      const double gain = at_upper_[j] ? -d : d;
      if (gain <= opt_.pricing_tol) continue;
      if (bland) return static_cast<long>(j);
      if (gain > best_score) {
        best_score = gain;
        best = static_cast<long>(j);
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t j) {
    double* prow = &t_[r * width_];
    const double p = prow[j];
    if (!(std::abs(p) > 1e-13)) throw Error(ErrorCode::NumericalInstability, "pivot underflow");
    nz_.clear();
    for (std::size_t k = 0; k < width_; ++k) {
      if (prow[k] == 0.0) continue;
      prow[k] /= p;
      if (std::abs(prow[k]) < 1e-15) {
        prow[k] = 0.0;
      } else {
        nz_.push_back(k);
      }
    }
    prow[j] = 1.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* row = &t_[i * width_];
      const double factor = row[j];
      if (factor == 0.0) continue;
      for (std::size_t k : nz_) {
        const double v = row[k] - factor * prow[k];
        row[k] = std::abs(v) < 1e-15 ? 0.0 : v;
      }
      row[j] = 0.0;
      if (std::abs(factor) > 1e10) {
        throw Error(ErrorCode::NumericalInstability, "tableau entries grew past guard");
      }
    }
    const double factor = reduced_[j];
    if (factor != 0.0) {
      for (std::size_t k : nz_) reduced_[k] -= factor * prow[k];
      reduced_[j] = 0.0;
    }
    basic_row_[basis_[r]] = -1;
    basis_[r] = j;
    basic_row_[j] = static_cast<long>(r);
  }

  // Recompute basic values and reduced costs from the slack block, which
  // holds B^{-1}.
  void refresh() {
    std::vector<double> b = rhs_;
    for (std::size_t j = 0; j < width_; ++j) {
      if (basic_row_[j] >= 0 || !at_upper_[j]) continue;
      for (const auto& [i, a] : original_[j]) b[i] -= upper_[j] * a;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < rows_; ++k) s += at(i, structural_ + k) * b[k];
      beta_[i] = s;
      if (!std::isfinite(s)) throw Error(ErrorCode::NumericalInstability, "basic value overflow");
    }
    // Reduced costs: cost_j - c_B B^{-1} A_j = cost_j - c_B (tableau column j).
    for (std::size_t j = 0; j < width_; ++j) {
      if (basic_row_[j] >= 0) {
        reduced_[j] = 0.0;
        continue;
      }
      double s = cost_[j];
      for (std::size_t i = 0; i < rows_; ++i) s -= cost_[basis_[i]] * at(i, j);
      reduced_[j] = s;
    }
  }

  SimplexOptions opt_;
  std::vector<Column> cols_;
  std::vector<double> offset_;
  std::size_t structural_ = 0;
  std::size_t rows_ = 0;
  std::size_t width_ = 0;
  std::vector<double> t_;
  std::vector<double> rhs_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
  std::vector<bool> at_upper_;
  std::vector<long> basic_row_;
  std::vector<std::size_t> basis_;
  std::vector<double> beta_;
  std::vector<std::size_t> nz_;
  // Sparse structural columns of the transformed constraint matrix.
  std::vector<std::vector<std::pair<std::size_t, double>>> original_;
};

}  // namespace

LpSolution solve_lp(const LpModel& model, const SimplexOptions& options) {
  if (model.objective.size() != model.variables.size()) {
    throw Error(ErrorCode::InvalidArgument, "objective length does not match variables");
  }
  Tableau tableau(model, options);
  LpSolution sol;
  sol.status = tableau.run(sol.iterations);
  if (sol.status == LpStatus::Optimal) {
    sol.values = tableau.model_values(model.variables.size());
    sol.objective = objective_value(model, sol.values);
  }
  return sol;
}

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Appends "+ 2.5 name" style terms, wrapping long expressions.
void write_terms(std::ostringstream& out, std::size_t& line_len,
                 const std::vector<std::pair<double, std::string>>& terms) {
  bool first = true;
  for (const auto& [coef, name] : terms) {
    std::string piece;
    const double mag = std::abs(coef);
    if (first) {
      piece = coef < 0.0 ? "-" : "";
      if (coef < 0.0) piece += " ";
    } else {
      piece = coef < 0.0 ? " - " : " + ";
    }
    if (mag != 1.0) piece += format_number(mag) + " ";
    piece += name;
    if (line_len + piece.size() > 200) {
      out << "\n   ";
      line_len = 3;
    }
    out << piece;
    line_len += piece.size();
    first = false;
  }
}

}  // namespace

std::string export_lp(const LpModel& model, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "\\ " << comment << "\n";
  out << "Maximize\n obj: ";
  std::vector<std::pair<double, std::string>> terms;
  for (std::size_t k = 0; k < model.variables.size(); ++k) {
    if (model.objective[k] != 0.0) terms.emplace_back(model.objective[k], model.variables[k].name);
  }
  if (terms.empty() && !model.variables.empty()) terms.emplace_back(0.0, model.variables[0].name);
  std::size_t len = 6;
  if (!terms.empty() && terms.front().first == 0.0) {
    out << "0 " << terms.front().second;
  } else {
    write_terms(out, len, terms);
  }
  out << "\nSubject To\n";
  for (const LpRow& row : model.rows) {
    out << " " << row.name << ": ";
    len = row.name.size() + 3;
    terms.clear();
    for (const LpTerm& t : row.terms) {
      if (t.coef != 0.0) terms.emplace_back(t.coef, model.variables[t.var].name);
    }
    write_terms(out, len, terms);
    out << (row.sense == RowSense::GreaterEqual ? " >= " : " <= ") << format_number(row.rhs)
        << "\n";
  }
  out << "Bounds\n";
  for (const LpVariable& v : model.variables) {
    out << " " << format_number(v.lower) << " <= " << v.name << " <= " << format_number(v.upper)
        << "\n";
  }
  out << "End\n";
  return out.str();
}

}  // namespace gft
