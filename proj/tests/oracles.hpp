// SPDX-License-Identifier: Apache-2.0
// Independent reference computations used by the unit and acceptance tests.
// They work directly on knot lists and never call the library's integrals.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "gft/distribution.hpp"
#include "gft/error.hpp"

namespace oracle {

using Knots = std::vector<gft::Knot>;

inline Knots knots_of(const gft::Distribution& d) { return {d.knots().begin(), d.knots().end()}; }

inline double cdf(const Knots& k, double x) {
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    if (x <= k[i + 1].x) {
      const double t = (x - k[i].x) / (k[i + 1].x - k[i].x);
      return k[i].q + t * (k[i + 1].q - k[i].q);
    }
  }
  return 1.0;
}

inline double quantile(const Knots& k, double q) {
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    if (q <= k[i + 1].q) {
      const double t = (q - k[i].q) / (k[i + 1].q - k[i].q);
      return k[i].x + t * (k[i + 1].x - k[i].x);
    }
  }
  return 1.0;
}

// Composite Simpson on `cells` uniform cells of [a, b], with every break
// point added to the grid. Exact for integrands that are quadratic between
// consecutive grid points.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::vector<double> breaks, std::size_t cells = 10000) {
  if (!(b > a)) return 0.0;
  for (std::size_t i = 0; i <= cells; ++i) {
    breaks.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(cells));
  }
  std::erase_if(breaks, [&](double t) { return t < a || t > b; });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double l = breaks[i], r = breaks[i + 1];
    sum += (r - l) / 6.0 * (f(l) + 4.0 * f(0.5 * (l + r)) + f(r));
  }
  return sum;
}

inline std::vector<double> xs(const Knots& k) {
  std::vector<double> out;
  for (const auto& knot : k) out.push_back(knot.x);
  return out;
}

// \int_a^b g(v) dF(v), integrating each segment on its own so the density
// is never sampled across a knot.
inline double integrate_density(const Knots& k, const std::function<double(double)>& g, double a,
                                double b, const std::vector<double>& breaks = {},
                                std::size_t cells = 64) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    const double density = (k[i + 1].q - k[i].q) / (k[i + 1].x - k[i].x);
    const double l = std::max(a, k[i].x), r = std::min(b, k[i + 1].x);
    sum += simpson([&](double v) { return g(v) * density; }, l, r, breaks, cells);
  }
  return sum;
}

inline double partial_expectation(const Knots& k, double a, double b) {
  return integrate_density(k, [](double v) { return v; }, a, b);
}

// FB = \int G(t) (1 - F(t)) dt on a 10^4-cell Simpson grid refined at knots.
inline double first_best(const Knots& F, const Knots& G) {
  std::vector<double> br = xs(F);
  const std::vector<double> g = xs(G);
  br.insert(br.end(), g.begin(), g.end());
  return simpson([&](double t) { return cdf(G, t) * (1.0 - cdf(F, t)); }, 0.0, 1.0, br);
}

// Midpoint double sum of (v - c)^+ over an N x N quantile grid.
inline double first_best_quantile_grid(const Knots& F, const Knots& G, std::size_t N) {
  std::vector<double> v(N), c(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(N);
    v[i] = quantile(F, q);
    c[i] = quantile(G, q);
  }
  double sum = 0.0;
  for (double vi : v) {
    for (double cj : c) sum += std::max(vi - cj, 0.0);
  }
  return sum / static_cast<double>(N * N);
}

struct GridMax {
  double arg;
  double value;
};

// Largest objective over the points i / (points - 1) plus any extra
// candidates (kinks, where a grid would miss the peak); first wins ties.
inline GridMax grid_argmax(const std::function<double(double)>& f, double lo, double hi,
                           std::size_t points = 10001, const std::vector<double>& extra = {}) {
  GridMax best{lo, f(lo)};
  for (std::size_t i = 1; i < points; ++i) {
    const double p = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double v = f(p);
    if (v > best.value) best = {p, v};
  }
  for (double p : extra) {
    if (p < lo || p > hi) continue;
    const double v = f(p);
    if (v > best.value) best = {p, v};
  }
  return best;
}

// Random CDF with `count` knots: sorted uniform interior coordinates with a
// minimum separation, so every segment has positive slope.
inline gft::Distribution random_distribution(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::vector<double> x{0.0, 1.0}, q{0.0, 1.0};
    for (std::size_t i = 2; i < count; ++i) {
      x.push_back(u(rng));
      q.push_back(u(rng));
    }
    std::sort(x.begin(), x.end());
    std::sort(q.begin(), q.end());
    bool ok = true;
    for (std::size_t i = 1; i < count; ++i) {
      if (x[i] - x[i - 1] < 1e-3 || q[i] - q[i - 1] < 1e-3) ok = false;
    }
    if (!ok) continue;
    Knots k;
    for (std::size_t i = 0; i < count; ++i) k.push_back({x[i], q[i]});
    return gft::Distribution(std::move(k));
  }
}

// Instance i of a seeded family with 2..max_knots knots per side.
inline gft::Instance random_instance(std::uint64_t seed, std::size_t max_knots = 8) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(2, max_knots);
  gft::Distribution F = random_distribution(rng, pick(rng));
  gft::Distribution G = random_distribution(rng, pick(rng));
  return {std::move(F), std::move(G)};
}

// Code of the gft::Error thrown by fn, or Ok when nothing is thrown.
template <typename Fn>
gft::ErrorCode error_code(Fn&& fn) {
  try {
    fn();
  } catch (const gft::Error& e) {
    return e.code();
  }
  return gft::ErrorCode::Ok;
}

}  // namespace oracle
