// SPDX-License-Identifier: Apache-2.0
#include "gft/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "gft/error.hpp"
#include "gft/rng.hpp"

namespace gft {

namespace {

void validate(const std::vector<Knot>& knots) {
  if (knots.size() < 2) {
    throw Error(ErrorCode::TooFewKnots, "a distribution needs at least two knots");
  }
  for (const Knot& k : knots) {
    if (!std::isfinite(k.x) || !std::isfinite(k.q)) {
      throw Error(ErrorCode::InvalidArgument, "knot coordinates must be finite");
    }
  }
  if (knots.front() != Knot{0.0, 0.0} || knots.back() != Knot{1.0, 1.0}) {
    throw Error(ErrorCode::BadEndpoints, "knots must start at (0,0) and end at (1,1)");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].x > knots[i - 1].x) || !(knots[i].q > knots[i - 1].q)) {
      std::ostringstream msg;
      msg << "knot " << i << " (" << knots[i].x << ", " << knots[i].q
          << ") does not strictly increase both coordinates";
      throw Error(ErrorCode::NonMonotone, msg.str());
    }
  }
}

}  // namespace

Distribution::Distribution(std::vector<Knot> knots) : knots_(std::move(knots)) {
  validate(knots_);
}

Distribution Distribution::uniform() { return Distribution({{0.0, 0.0}, {1.0, 1.0}}); }

Distribution make_piecewise_linear(std::vector<Knot> knots) {
  return Distribution(std::move(knots));
}

std::size_t Distribution::segment_of_value(double x) const noexcept {
  auto it = std::upper_bound(knots_.begin() + 1, knots_.end(), x,
                             [](double v, const Knot& k) { return v < k.x; });
  auto idx = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(idx, segment_count() - 1);
}

std::size_t Distribution::segment_of_probability(double q) const noexcept {
  auto it = std::upper_bound(knots_.begin() + 1, knots_.end(), q,
                             [](double p, const Knot& k) { return p < k.q; });
  auto idx = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(idx, segment_count() - 1);
}

double Distribution::cdf(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::OutOfSupport, "cdf argument outside [0,1]");
  }
  const std::size_t i = segment_of_value(x);
  const Knot& a = knots_[i];
  const Knot& b = knots_[i + 1];
  if (x == b.x) return b.q;
  return a.q + (x - a.x) * (b.q - a.q) / (b.x - a.x);
}

double Distribution::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "quantile argument outside [0,1]");
  }
  const std::size_t i = segment_of_probability(q);
  const Knot& a = knots_[i];
  const Knot& b = knots_[i + 1];
  if (q == b.q) return b.x;
  const double x = a.x + (q - a.q) * (b.x - a.x) / (b.q - a.q);
  return std::clamp(x, a.x, b.x);
}

double Distribution::partial_expectation(double a, double b) const {
  if (!(a >= 0.0 && b <= 1.0)) {
    throw Error(ErrorCode::OutOfSupport, "integration range outside [0,1]");
  }
  if (a > b) throw Error(ErrorCode::BadRange, "partial_expectation requires a <= b");
  double sum = 0.0;
  for (std::size_t i = segment_of_value(a); i < segment_count(); ++i) {
    const double lo = std::max(a, knots_[i].x);
    const double hi = std::min(b, knots_[i + 1].x);
    if (hi <= lo) {
      if (knots_[i].x >= b) break;
      continue;
    }
    sum += slope(i) * (hi - lo) * (hi + lo) * 0.5;
  }
  return sum;
}

Distribution Distribution::reflected() const {
  std::vector<Knot> out;
  out.reserve(knots_.size());
  for (auto it = knots_.rbegin(); it != knots_.rend(); ++it) {
    out.push_back({1.0 - it->x, 1.0 - it->q});
  }
  return Distribution(std::move(out));
}

ScaledDistribution rescale_to_unit(std::vector<Knot> knots) {
  if (knots.size() < 2) {
    throw Error(ErrorCode::TooFewKnots, "a distribution needs at least two knots");
  }
  const AffineMap map{knots.front().x, knots.back().x};
  if (!(map.hi != map.lo)) {
    throw Error(ErrorCode::DegenerateSupport, "support has zero width");
  }
  if (map.hi < map.lo) {
    throw Error(ErrorCode::NonMonotone, "support bounds are reversed");
  }
  for (Knot& k : knots) k.x = map.to_unit(k.x);
  return {Distribution(std::move(knots)), map};
}

ScaledDistribution conditional_above(const Distribution& d, double x) {
  if (x == 1.0) {
    throw Error(ErrorCode::DegenerateTruncation, "cannot condition on v >= 1");
  }
  if (!(x >= 0.0 && x < 1.0)) {
    throw Error(ErrorCode::OutOfSupport, "truncation point outside [0,1)");
  }
  if (x == 0.0) return {d, AffineMap{}};

  const double fx = d.cdf(x);
  const double mass = 1.0 - fx;
  const AffineMap map{x, 1.0};
  std::vector<Knot> knots{{0.0, 0.0}};
  for (const Knot& k : d.knots()) {
    if (k.x <= x) continue;
    const Knot next{map.to_unit(k.x), (k.q - fx) / mass};
    if (next.x > knots.back().x && next.q > knots.back().q) knots.push_back(next);
  }
  // The last pushed knot is the image of (1, 1), exactly (1, 1).
  return {Distribution(std::move(knots)), map};
}

std::vector<double> sample(const Distribution& d, std::uint64_t seed, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = d.quantile(uniform01(rng));
  return out;
}

Distribution fit_cdf(const std::function<double(double)>& cdf, std::size_t knot_count) {
  if (knot_count == 0) throw Error(ErrorCode::InvalidArgument, "knot_count must be positive");
  const double lo = cdf(0.0);
  const double hi = cdf(1.0);
  if (!(hi > lo)) throw Error(ErrorCode::NonMonotone, "cdf has no mass on [0,1]");
  std::vector<Knot> knots(knot_count + 1);
  for (std::size_t i = 0; i <= knot_count; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(knot_count);
    knots[i] = {x, (cdf(x) - lo) / (hi - lo)};
  }
  knots.front() = {0.0, 0.0};
  knots.back() = {1.0, 1.0};
  return Distribution(std::move(knots));
}

}  // namespace gft
