#pragma once

// Trapezoid-rule densities on a user-supplied grid, used as deterministic
// ground truth for the Gibbs samplers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pig {

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A normalized density tabulated on an increasing grid.
struct GridDensity {
  std::vector<double> grid;
  std::vector<double> density;

  double integral() const { return moment([](double) { return 1.0; }); }
  double mean() const { return moment([](double x) { return x; }); }

  double sd() const {
    const double m = mean();
    return std::sqrt(moment([m](double x) { return (x - m) * (x - m); }));
  }

  /// Grid point with the largest density.
  double mode() const {
    const auto it = std::max_element(density.begin(), density.end());
    return grid[static_cast<std::size_t>(it - density.begin())];
  }

  /// CDF by cumulative trapezoid, linear inside each cell.
  double cdf(double x) const {
    if (x <= grid.front()) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double h = grid[i + 1] - grid[i];
      if (x < grid[i + 1]) {
        const double frac = (x - grid[i]) / h;
        // exact integral of the linear interpolant over [grid[i], x]
        const double fx = density[i] + frac * (density[i + 1] - density[i]);
        return acc + 0.5 * (density[i] + fx) * (x - grid[i]);
      }
      acc += 0.5 * h * (density[i] + density[i + 1]);
    }
    return acc;
  }

 private:
  template <class F>
  double moment(F f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      acc += 0.5 * (grid[i + 1] - grid[i]) * (f(grid[i]) * density[i] + f(grid[i + 1]) * density[i + 1]);
    }
    return acc;
  }
};

inline void check_grid(std::span<const double> grid) {
  if (grid.size() < 3) throw GridError("quadrature grid needs at least 3 points");
  if (!(grid.front() > 0.0)) throw GridError("quadrature grid must be strictly positive");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i + 1] > grid[i])) throw GridError("quadrature grid must be strictly increasing");
  }
}

/// Ratio below the peak where the tail is considered negligible.
inline constexpr double kTailCutoff = 1e-10;
/// Largest tolerated log-density change between neighbouring points.
inline constexpr double kMaxLogJump = 0.5;

/// Normalizes exp(log_density) over the grid by the trapezoid rule.
///
/// Refuses grids whose right end still carries mass (density at the last
/// point must be below kTailCutoff of the peak) and grids too coarse to
/// resolve the density: adjacent log values may differ by at most
/// kMaxLogJump wherever the density is non-negligible.
inline GridDensity normalize_on_grid(std::span<const double> grid, std::vector<double> log_density) {
  check_grid(grid);
  const double peak = *std::max_element(log_density.begin(), log_density.end());
  if (!std::isfinite(peak)) throw GridError("log density is not finite anywhere on the grid");
  const double negligible = peak + std::log(kTailCutoff);
  if (log_density.back() >= negligible) {
    throw GridError("grid does not cover the tail: density at " + std::to_string(grid.back()) +
                    " is " + std::to_string(std::exp(log_density.back() - peak)) +
                    " of the peak; extend the grid");
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (std::max(log_density[i], log_density[i + 1]) < negligible) continue;
    const double jump = std::abs(log_density[i + 1] - log_density[i]);
    if (!(jump <= kMaxLogJump)) {
      throw GridError("grid too coarse between " + std::to_string(grid[i]) + " and " +
                      std::to_string(grid[i + 1]) + ": log-density jump " +
                      std::to_string(jump) + " > " + std::to_string(kMaxLogJump));
    }
  }
  GridDensity out;
  out.grid.assign(grid.begin(), grid.end());
  out.density.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.density[i] = std::exp(log_density[i] - peak);
  const double z = out.integral();
  for (double& d : out.density) d /= z;
  return out;
}

/// n points evenly spaced on [lo, hi].
inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

/// n points evenly spaced in log scale on [lo, hi], lo > 0.
inline std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

/// Tabulates exp(log_density) on (0, hi] with hi found by doubling until
/// the density is negligible, on the union of a log-spaced and a linear
/// grid.
/// Points are doubled until normalize_on_grid accepts the grid.
inline GridDensity adaptive_quadrature(const std::function<double(double)>& log_density,
                                       std::size_t points = 4000, double lo = 1e-8) {
  if (!(lo > 0.0) || points < 3) throw GridError("adaptive_quadrature: need lo > 0 and at least 3 points");
  // 30 nats is below the 1e-10 cutoff with margin
  constexpr double kDrop = 30.0;
  double hi = 1.0;
  for (int iter = 0;; ++iter) {
    if (iter > 60) throw GridError("adaptive_quadrature: density does not decay");
    const auto probe = log_grid(lo, hi, 400);
    double peak = -std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const double v = log_density(probe[i]);
      if (v > peak) {
        peak = v;
        arg = i;
      }
    }
    if (arg + 1 < probe.size() && log_density(hi) < peak - kDrop) break;
    hi *= 2.0;
  }
  for (std::size_t n = points;; n *= 2) {
    auto g = log_grid(lo, hi, n);
    const auto lin = linear_grid(hi / static_cast<double>(n), hi, n);
    g.insert(g.end(), lin.begin(), lin.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end(), [](double x, double y) { return !(y > x * (1.0 + 1e-14)); }), g.end());
    std::vector<double> logd(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) logd[i] = log_density(g[i]);
    try {
      return normalize_on_grid(g, std::move(logd));
    } catch (const GridError&) {
      if (n >= (std::size_t{1} << 20)) throw;
    }
  }
}

}  // namespace pig
