#pragma once

#include <cmath>
#include <algorithm>
#include <functional>
#include <vector>

#include "pig/quadrature.hpp"
#include "pig/summary.hpp"

namespace pig_test {

// Digamma by upward recurrence to z >= 20 and the asymptotic series.
inline double digamma_oracle(double x) {
  double acc = 0.0;
  while (x < 20.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double z2 = 1.0 / (x * x);
  const double series = z2 * (1.0 / 12 - z2 * (1.0 / 120 - z2 * (1.0 / 252 - z2 * (1.0 / 240 - z2 / 132))));
  return acc + std::log(x) - 0.5 / x - series;
}

// Truncated product of ((d + u)/(d + v)) e^{-(u - v)/d}, d = k + s, in long double.
inline double log_product_oracle(double t, double c, std::size_t terms, double s = 0.0) {
  const long double v = std::abs(c) / std::sqrt(2.0L);
  const long double u = std::sqrt(static_cast<long double>(t) * t + v * v);
  long double acc = 0.0L;
  for (std::size_t k = terms; k >= 1; --k) {
    const long double d = static_cast<long double>(k) + s;
    acc += std::log1p(u / d) - std::log1p(v / d) - (u - v) / d;
  }
  return static_cast<double>(acc);
}

inline double golden_section_max(const std::function<double(double)>& f, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  for (int i = 0; i < 200 && b - a > 1e-12; ++i) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

// CDF of a tabulated density with cumulative sums precomputed.
inline std::function<double(double)> grid_cdf(const pig::GridDensity& g) {
  std::vector<double> cum(g.grid.size(), 0.0);
  for (std::size_t i = 1; i < g.grid.size(); ++i) {
    cum[i] = cum[i - 1] + 0.5 * (g.grid[i] - g.grid[i - 1]) * (g.density[i] + g.density[i - 1]);
  }
  return [g, cum](double x) {
    if (x <= g.grid.front()) return 0.0;
    if (x >= g.grid.back()) return cum.back();
    const auto i = static_cast<std::size_t>(std::upper_bound(g.grid.begin(), g.grid.end(), x) - g.grid.begin()) - 1;
    const double frac = (x - g.grid[i]) / (g.grid[i + 1] - g.grid[i]);
    const double fx = g.density[i] + frac * (g.density[i + 1] - g.density[i]);
    return cum[i] + 0.5 * (g.density[i] + fx) * (x - g.grid[i]);
  };
}

inline double mean_of(const std::vector<double>& x) { return pig::sample_mean(x); }

}  // namespace pig_test
