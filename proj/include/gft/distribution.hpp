// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gft {

struct Knot {
  double x;  // value
  double q;  // cumulative probability at x

  friend bool operator==(const Knot&, const Knot&) = default;
};

// Tolerance for identities that hold exactly up to floating point rounding.
inline constexpr double kExactTol = 1e-12;
// Tolerance for quantities that come out of an optimizer.
inline constexpr double kOptimizerTol = 1e-9;

// Piecewise linear CDF on [0, 1] with strictly positive density.
//
// Knots run from (0, 0) to (1, 1) with both coordinates strictly increasing,
// so the density is a positive constant on every segment and every integral
// against dF reduces to a per-segment polynomial.
class Distribution {
 public:
  // Validates and throws gft::Error on NonMonotone, BadEndpoints or
  // TooFewKnots.
  explicit Distribution(std::vector<Knot> knots);

  static Distribution uniform();

  std::span<const Knot> knots() const noexcept { return knots_; }
  std::size_t segment_count() const noexcept { return knots_.size() - 1; }

  // Density on segment i, i.e. slope of the CDF on [x_i, x_{i+1}].
  double slope(std::size_t i) const noexcept {
    return (knots_[i + 1].q - knots_[i].q) / (knots_[i + 1].x - knots_[i].x);
  }

  // Index of the segment containing x; x == 1 maps to the last segment.
  std::size_t segment_of_value(double x) const noexcept;
  std::size_t segment_of_probability(double q) const noexcept;

  double cdf(double x) const;
  double quantile(double q) const;

  // Exact \int_a^b v dF(v).
  double partial_expectation(double a, double b) const;
  double mean() const { return partial_expectation(0.0, 1.0); }

  // x -> 1 - x. The reflected CDF is 1 - F(1 - x).
  Distribution reflected() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<Knot> knots_;
};

Distribution make_piecewise_linear(std::vector<Knot> knots);

// t -> (t - lo) / (hi - lo). GFT values computed in unit coordinates convert
// back by multiplying with scale().
struct AffineMap {
  double lo = 0.0;
  double hi = 1.0;

  double to_unit(double t) const noexcept { return (t - lo) / (hi - lo); }
  double from_unit(double u) const noexcept { return lo + u * (hi - lo); }
  double scale() const noexcept { return hi - lo; }
  bool is_identity() const noexcept { return lo == 0.0 && hi == 1.0; }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

// A unit distribution together with the map placing it on [lo, hi].
struct ScaledDistribution {
  Distribution unit;
  AffineMap map;

  double cdf(double t) const { return unit.cdf(map.to_unit(t)); }
  double quantile(double q) const { return map.from_unit(unit.quantile(q)); }
};

// Knots whose first x is lo and last x is hi; throws DegenerateSupport when
// lo == hi.
ScaledDistribution rescale_to_unit(std::vector<Knot> knots);

// F conditioned on v >= x, living on [x, 1]. Throws DegenerateTruncation for
// x == 1.
ScaledDistribution conditional_above(const Distribution& d, double x);

// Inverse-transform draws from mt19937_64(seed).
std::vector<double> sample(const Distribution& d, std::uint64_t seed, std::size_t n);

// Interpolates an arbitrary continuous CDF on [0, 1] at `knot_count` + 1
// equispaced points, renormalised to hit 0 and 1 at the ends.
Distribution fit_cdf(const std::function<double(double)>& cdf, std::size_t knot_count = 256);

struct Instance {
  Distribution buyer;   // F, values
  Distribution seller;  // G, costs

  friend bool operator==(const Instance&, const Instance&) = default;
};

}  // namespace gft
