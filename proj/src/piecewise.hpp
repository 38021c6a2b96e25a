// SPDX-License-Identifier: Apache-2.0
#pragma once

// Quadrature helpers shared by the mechanism and bound evaluators.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gft/distribution.hpp"

namespace gft::detail {

// 3-point Gauss-Legendre: exact for polynomials of degree <= 5.
template <std::size_t N, class Fn>
std::array<double, N> gauss3(double a, double b, Fn&& fn) {
  static constexpr double kNode = 0.77459666924148337704;  // sqrt(3/5)
  static constexpr double kW0 = 8.0 / 9.0;
  static constexpr double kW1 = 5.0 / 9.0;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const std::array<double, N> f0 = fn(mid);
  const std::array<double, N> fl = fn(mid - half * kNode);
  const std::array<double, N> fr = fn(mid + half * kNode);
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = half * (kW0 * f0[i] + kW1 * (fl[i] + fr[i]));
  }
  return out;
}

template <std::size_t N>
void accumulate(std::array<double, N>& acc, const std::array<double, N>& add) {
  for (std::size_t i = 0; i < N; ++i) acc[i] += add[i];
}

// Sorted, deduplicated breakpoints restricted to [0, 1], always containing
// both ends.
inline std::vector<double> normalize_breaks(std::vector<double> breaks) {
  breaks.push_back(0.0);
  breaks.push_back(1.0);
  std::erase_if(breaks, [](double t) { return !(t >= 0.0 && t <= 1.0); });
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

inline void append_knots(std::vector<double>& breaks, const Distribution& d) {
  for (const Knot& k : d.knots()) breaks.push_back(k.x);
}

inline constexpr int kUnknownId = -2;

// Integrates value(t, choose(t)) over [lo, hi] where choose(t) picks the
// argmax among smooth candidates.
//
// On any stretch where the chosen id is constant, value(., id) must be a
// polynomial of degree <= 5 (this is what makes the result exact). Switch
// points between ids are located by bisection on choose. Ids already known
// at an end (from an enclosing bisection) are passed down so the end is
// never re-probed across a switch point.
template <std::size_t N, class Choose, class Value>
std::array<double, N> integrate_switching(double lo, double hi, const Choose& choose,
                                          const Value& value, int id_lo = kUnknownId,
                                          int id_hi = kUnknownId, int depth = 0) {
  std::array<double, N> out{};
  const double width = hi - lo;
  if (!(width > 0.0)) return out;

  // Probes sit just inside the ends: the ends are breakpoints or switch
  // points, where the argmax is a tie.
  const double eps = 1e-10 * width;
  const double mid = lo + 0.5 * width;
  if (id_lo == kUnknownId) id_lo = choose(lo + eps);
  if (id_hi == kUnknownId) id_hi = choose(hi - eps);
  const int id_mid = choose(mid);

  if ((id_lo == id_hi && id_lo == id_mid) || depth > 60 || width < 1e-15) {
    return gauss3<N>(lo, hi, [&](double t) { return value(t, id_lo); });
  }
  if (id_lo == id_mid || id_mid == id_hi) {
    // One switch inside the half whose probes disagree.
    const int a = id_lo;
    double left = id_lo == id_mid ? mid : lo + eps;
    double right = id_lo == id_mid ? hi - eps : mid;
    int id_right = id_lo == id_mid ? id_hi : id_mid;
    for (int it = 0; it < 200 && right - left > 4e-16 * std::max(1.0, std::abs(right)); ++it) {
      const double m = 0.5 * (left + right);
      const int id = choose(m);
      if (id == a) {
        left = m;
      } else {
        right = m;
        id_right = id;
      }
    }
    const double cut = 0.5 * (left + right);
    accumulate(out, integrate_switching<N>(lo, cut, choose, value, id_lo, a, depth + 1));
    accumulate(out, integrate_switching<N>(cut, hi, choose, value, id_right, id_hi, depth + 1));
    return out;
  }
  accumulate(out, integrate_switching<N>(lo, mid, choose, value, id_lo, id_mid, depth + 1));
  accumulate(out, integrate_switching<N>(mid, hi, choose, value, id_mid, id_hi, depth + 1));
  return out;
}

}  // namespace gft::detail
