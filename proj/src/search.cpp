// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <array>

#include "gft/bounds.hpp"
#include "gft/error.hpp"
#include "gft/rng.hpp"

namespace gft {

namespace {

double min_gap(std::size_t knot_budget) {
  return std::min(1e-3, 0.2 / static_cast<double>(knot_budget));
}

bool strictly_increasing(const std::vector<double>& v, double gap) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] - v[i - 1] >= gap)) return false;
  }
  return true;
}

// Interior knot coordinates of one distribution; endpoints are implicit.
struct Shape {
  std::vector<double> xs;
  std::vector<double> qs;

  Distribution build() const {
    std::vector<Knot> knots{{0.0, 0.0}};
    for (std::size_t i = 0; i < xs.size(); ++i) knots.push_back({xs[i], qs[i]});
    knots.push_back({1.0, 1.0});
    return Distribution(std::move(knots));
  }

  // Coordinate `axis` (0: x, 1: q) of interior knot i.
  double& at(int axis, std::size_t i) { return axis == 0 ? xs[i] : qs[i]; }

  bool valid(double gap) const {
    const auto padded = [](const std::vector<double>& v) {
      std::vector<double> out{0.0};
      out.insert(out.end(), v.begin(), v.end());
      out.push_back(1.0);
      return out;
    };
    return strictly_increasing(padded(xs), gap) && strictly_increasing(padded(qs), gap);
  }
};

Shape random_shape(std::mt19937_64& rng, std::size_t knot_budget) {
  const std::size_t interior = knot_budget - 2;
  const double gap = min_gap(knot_budget);
  Shape s;
  for (;;) {
    s.xs.assign(interior, 0.0);
    s.qs.assign(interior, 0.0);
    for (double& x : s.xs) x = uniform01(rng);
    for (double& q : s.qs) q = uniform01(rng);
    std::sort(s.xs.begin(), s.xs.end());
    std::sort(s.qs.begin(), s.qs.end());
    if (s.valid(gap)) return s;
  }
}

Shape uniform_shape(std::size_t knot_budget) {
  Shape s;
  for (std::size_t i = 1; i + 1 < knot_budget; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(knot_budget - 1);
    s.xs.push_back(t);
    s.qs.push_back(t);
  }
  return s;
}

double evaluate(const std::array<Shape, 2>& pair) {
  return performance_ratio(Instance{pair[0].build(), pair[1].build()});
}

}  // namespace

Distribution random_distribution(std::mt19937_64& rng, std::size_t knot_budget) {
  if (knot_budget < 2) throw Error(ErrorCode::TooFewKnots, "knot budget must be at least 2");
  return random_shape(rng, knot_budget).build();
}

SearchResult search_worst_case(std::size_t trials, std::uint64_t seed, std::size_t knot_budget,
                               const SearchOptions& options) {
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "need at least one trial");
  if (knot_budget < 2) throw Error(ErrorCode::TooFewKnots, "knot budget must be at least 2");
  const double gap = min_gap(knot_budget);

  SearchResult result;
  result.ratio = -1.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(substream_seed(seed, trial));
    std::array<Shape, 2> state;
    if (trial == 0) {
      state = {uniform_shape(knot_budget), uniform_shape(knot_budget)};
    } else {
      state = {random_shape(rng, knot_budget), random_shape(rng, knot_budget)};
    }
    double ratio = evaluate(state);

    double step = options.initial_step;
    for (std::size_t sweep = 0; sweep < options.max_sweeps && step >= options.min_step; ++sweep) {
      bool improved = false;
      for (int side = 0; side < 2; ++side) {
        for (std::size_t i = 0; i < state[side].xs.size(); ++i) {
          for (int axis = 0; axis < 2; ++axis) {
            for (double dir : {1.0, -1.0}) {
              std::array<Shape, 2> next = state;
              next[side].at(axis, i) += dir * step;
              if (!next[side].valid(gap)) continue;
              const double r = evaluate(next);
              if (r > ratio) {
                ratio = r;
                state = std::move(next);
                improved = true;
                break;
              }
            }
          }
        }
      }
      if (!improved) step *= 0.5;
    }

    result.trial_ratios.push_back(ratio);
    if (ratio > result.ratio) {
      result.ratio = ratio;
      result.best_trial = trial;
      result.instance = Instance{state[0].build(), state[1].build()};
    }
  }
  return result;
}

}  // namespace gft
