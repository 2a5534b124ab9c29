#pragma once

// Posterior summaries and Monte-Carlo diagnostics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pig/chain.hpp"

namespace pig {

/// Below this many draws MCSE and ESS are not reported.
inline constexpr std::size_t kMinDiagnosticDraws = 10;

struct ParameterSummary {
  std::string parameter;
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double q975 = 0.0;
  std::optional<double> mcse;
  std::optional<double> ess;
  std::size_t draws = 0;
};

struct SummaryReport {
  std::vector<ParameterSummary> parameters;

  const ParameterSummary& at(const std::string& name) const {
    for (const auto& p : parameters) {
      if (p.parameter == name) return p;
    }
    throw std::out_of_range("SummaryReport: no parameter '" + name + "'");
  }
};

inline double sample_mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("sample_mean: no draws");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Sample standard deviation (n - 1 denominator); 0 for a single draw.
inline double sample_sd(std::span<const double> x) {
  const double m = sample_mean(x);
  if (x.size() < 2) return 0.0;
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

/// Standard error of the mean for independent draws.
inline double iid_mcse(std::span<const double> x) {
  return sample_sd(x) / std::sqrt(static_cast<double>(x.size()));
}

/// Linear-interpolation quantile (type 7) of already sorted data.
inline double quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw std::invalid_argument("quantile: no draws");
  if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("quantile: probability outside [0, 1]");
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

/// MCSE of the mean by non-overlapping batch means with ceil(sqrt(S))
/// batches of equal length; leftover draws at the end are dropped.
inline double batch_means_mcse(std::span<const double> x) {
  const std::size_t s = x.size();
  if (s < kMinDiagnosticDraws) throw std::invalid_argument("batch_means_mcse: fewer than 10 draws");
  const auto batches = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(s))));
  const std::size_t len = s / batches;
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    means[b] = sample_mean(x.subspan(b * len, len));
  }
  const double grand = sample_mean(means);
  double ss = 0.0;
  for (double m : means) ss += (m - grand) * (m - grand);
  const double var_hat = static_cast<double>(len) * ss / static_cast<double>(batches - 1);
  return std::sqrt(var_hat / static_cast<double>(batches * len));
}

/// Effective sample size from Geyer's initial positive sequence: pair sums
/// of autocorrelations are accumulated while positive. Clamped to S.
inline double effective_sample_size(std::span<const double> x) {
  const std::size_t s = x.size();
  if (s < kMinDiagnosticDraws) throw std::invalid_argument("effective_sample_size: fewer than 10 draws");
  const double m = sample_mean(x);
  std::vector<double> c(x.begin(), x.end());
  for (double& v : c) v -= m;
  const double c0 = std::inner_product(c.begin(), c.end(), c.begin(), 0.0) / static_cast<double>(s);
  if (!(c0 > 0.0)) return static_cast<double>(s);
  auto rho = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < s; ++i) acc += c[i] * c[i + lag];
    return acc / static_cast<double>(s) / c0;
  };
  double tau = -1.0;
  for (std::size_t t = 0; t + 1 < s; t += 2) {
    const double pair = rho(t) + rho(t + 1);
    if (!(pair > 0.0)) break;
    tau += 2.0 * pair;
  }
  tau = std::max(tau, 1.0 / static_cast<double>(s));
  return std::min(static_cast<double>(s), static_cast<double>(s) / tau);
}

inline ParameterSummary summarize_draws(std::string name, std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("summarize: no draws for " + name);
  ParameterSummary out;
  out.parameter = std::move(name);
  out.draws = x.size();
  out.mean = sample_mean(x);
  out.sd = sample_sd(x);
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  out.q025 = quantile_sorted(sorted, 0.025);
  out.q25 = quantile_sorted(sorted, 0.25);
  out.q50 = quantile_sorted(sorted, 0.5);
  out.q75 = quantile_sorted(sorted, 0.75);
  out.q975 = quantile_sorted(sorted, 0.975);
  if (x.size() >= kMinDiagnosticDraws) {
    out.mcse = batch_means_mcse(x);
    out.ess = effective_sample_size(x);
  }
  return out;
}

/// Per-parameter summaries of merged chains. Batch means and ESS are
/// computed on the concatenation.
inline SummaryReport summarize(const PosteriorSamples& samples) {
  if (samples.size() == 0) throw std::invalid_argument("summarize: no draws");
  SummaryReport report;
  for (std::size_t k = 0; k < samples.dims(); ++k) {
    report.parameters.push_back(summarize_draws(samples.names[k], samples.column(k)));
  }
  return report;
}

/// sup_x |F_n(x) - cdf(x)| for the empirical CDF of x.
inline double ks_distance(std::span<const double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw std::invalid_argument("ks_distance: no draws");
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto nx = static_cast<double>(x.size());
  const auto ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return d;
}

/// Median of the means of `blocks` equal consecutive blocks; robust for
/// heavy-tailed draws whose variance is infinite.
inline double median_of_means(std::span<const double> x, std::size_t blocks) {
  if (blocks < 1 || x.size() < blocks) throw std::invalid_argument("median_of_means: bad block count");
  const std::size_t len = x.size() / blocks;
  std::vector<double> means(blocks);
  for (std::size_t b = 0; b < blocks; ++b) means[b] = sample_mean(x.subspan(b * len, len));
  std::sort(means.begin(), means.end());
  return quantile_sorted(means, 0.5);
}

}  // namespace pig
