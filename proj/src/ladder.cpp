// SPDX-License-Identifier: Apache-2.0
#include "gft/ladder.hpp"

#include <cmath>

#include "gft/error.hpp"

namespace gft {

void check_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorCode::BadLambda, "lambda must lie in (0,1)");
  }
}

double mu(const Distribution& F, double lambda, double x) {
  return mu_k(F, lambda, x, 1);
}

double mu_k(const Distribution& F, double lambda, double x, int k) {
  check_lambda(lambda);
  const double fx = F.cdf(x);
  if (k == 0) return x;
  if (k == 1) return F.quantile(lambda + (1.0 - lambda) * fx);
  const double shrink = std::pow(1.0 - lambda, std::abs(k));
  if (k > 0) return F.quantile(1.0 - shrink * (1.0 - fx));
  const double q = 1.0 - (1.0 - fx) / shrink;
  if (q < 0.0) return 0.0;
  return F.quantile(q);
}

QuantileLadder build_ladder(const Distribution& F, double lambda, double c, double eps) {
  check_lambda(lambda);
  if (c == 1.0) throw Error(ErrorCode::DegenerateStart, "ladder cannot start at 1");
  if (!(c >= 0.0 && c < 1.0)) throw Error(ErrorCode::OutOfSupport, "ladder start outside [0,1)");
  const double tail0 = 1.0 - F.cdf(c);
  if (!(eps > 0.0 && eps < tail0)) {
    throw Error(ErrorCode::InvalidArgument, "eps must lie in (0, 1 - F(c))");
  }

  QuantileLadder ladder;
  ladder.lambda = lambda;
  ladder.start = c;
  ladder.truncation_eps = eps;
  ladder.points.push_back(c);
  ladder.tails.push_back(tail0);
  for (int k = 1;; ++k) {
    const double tail = std::pow(1.0 - lambda, k) * tail0;
    const double point = F.quantile(1.0 - tail);
    // Past double resolution near 1 the ladder cannot keep increasing.
    if (!(point > ladder.points.back())) break;
    ladder.points.push_back(point);
    ladder.tails.push_back(tail);
    if (tail < eps) break;
  }
  return ladder;
}

}  // namespace gft
