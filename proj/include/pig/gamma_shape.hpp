#pragma once

// Gibbs sampling of the gamma shape parameter alpha for y_i ~ Ga(alpha, beta)
// with beta known, under the prior p(alpha) ∝ a^{alpha-1} beta^{c alpha} / Γ(alpha)^b.
//
// The posterior is ∝ (beta'_y)^alpha / Γ(alpha)^{b'}. Writing alpha~ = alpha - 1,
// each factor e^{-γ alpha~} / Γ(alpha~ + 1) is the transform E[e^{-w alpha~^2}] of
// an untilted P-IG variable when alpha~ >= 0, which gives the printed sampler
//
//   w_j | alpha~ ~ P-IG(d, sqrt(2) |alpha~|),  j = 1..b'
//   alpha~ | w   ~ N(mu, sigma^2) truncated to alpha~ > -1.
//
// The marginal scheme applies the identity to alpha itself, which is valid
// for every alpha > 0:
//
//   w_j | alpha ~ P-IG(d, sqrt(2) alpha)
//   alpha | w   ∝ alpha^{b'} exp(-sum(w) alpha^2 + (γ b' + log beta'_y) alpha).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "pig/chain.hpp"
#include "pig/config.hpp"
#include "pig/pig_dist.hpp"
#include "pig/quadrature.hpp"
#include "pig/rng.hpp"
#include "pig/special_fn.hpp"

namespace pig {

struct GammaShapePrior {
  double a = 1.0;
  std::int64_t b = 1;
  double c = 0.0;
  double beta = 1.0;  // known rate

  void validate() const {
    if (!std::isfinite(a) || !(a > 0.0)) throw std::invalid_argument("GammaShapePrior: a must be > 0");
    if (b < 0) throw std::invalid_argument("GammaShapePrior: b must be a nonnegative integer");
    if (!std::isfinite(c)) throw std::invalid_argument("GammaShapePrior: c must be finite");
    if (!std::isfinite(beta) || !(beta > 0.0)) {
      throw std::invalid_argument("GammaShapePrior: beta must be > 0");
    }
  }
};

/// Updated hyperparameters, all in log form:
///   log a' = log a + sum log y_i,  b' = b + n,  c' = c + n,
///   log beta'_y = log a' + c' log beta.
struct ShapeHyper {
  double log_a = 0.0;
  std::int64_t b = 0;
  double c = 0.0;
  double log_beta_y = 0.0;

  friend bool operator==(const ShapeHyper&, const ShapeHyper&) = default;
};

inline ShapeHyper shape_hyper(std::span<const double> y, const GammaShapePrior& prior) {
  prior.validate();
  if (y.empty()) throw std::invalid_argument("shape_hyper: no observations");
  std::vector<double> logs;
  logs.reserve(y.size());
  for (double v : y) {
    if (!std::isfinite(v) || !(v > 0.0)) throw std::domain_error("shape_hyper: observations must be > 0");
    logs.push_back(std::log(v));
  }
  // sorted: bit-identical under any permutation of y
  std::sort(logs.begin(), logs.end());
  const double sum_log = std::accumulate(logs.begin(), logs.end(), 0.0);
  const auto n = static_cast<std::int64_t>(y.size());
  ShapeHyper h;
  h.log_a = std::log(prior.a) + sum_log;
  h.b = prior.b + n;
  h.c = prior.c + static_cast<double>(n);
  h.log_beta_y = h.log_a + h.c * std::log(prior.beta);
  return h;
}

struct GammaShapeChainState {
  double alpha_tilde = 0.0;  // alpha - 1, > -1
  std::vector<double> w;     // b' auxiliaries
};

/// Redraws all b' auxiliaries from P-IG(d, sqrt(2) |alpha~|) (printed) or
/// P-IG(d, sqrt(2) alpha) (marginal).
inline void update_w_shape(GammaShapeChainState& state, const ShapeHyper& hyper,
                           const PigSamplerConfig& pig_config, RngState& rng,
                           AugmentationScheme scheme = kDefaultScheme) {
  const double t = scheme == AugmentationScheme::printed ? state.alpha_tilde : state.alpha_tilde + 1.0;
  const auto params = PigParams::integer(std::numbers::sqrt2 * std::abs(t));
  state.w.resize(static_cast<std::size_t>(hyper.b));
  for (double& w : state.w) w = pig_sample(params, pig_config, rng);
}

struct ShapeConditional {
  double mean = 0.0;
  double variance = 0.0;
};

/// Printed scheme: mu = (γ b' + log beta'_y) / (2 sum w),  sigma^2 = 1 / (2 sum w).
inline ShapeConditional shape_conditional(const GammaShapeChainState& state, const ShapeHyper& hyper) {
  const double sum_w = std::accumulate(state.w.begin(), state.w.end(), 0.0);
  if (!(sum_w > 0.0)) throw std::domain_error("shape_conditional: sum of auxiliaries must be > 0");
  return {(EulerGamma::value * static_cast<double>(hyper.b) + hyper.log_beta_y) / (2.0 * sum_w),
          1.0 / (2.0 * sum_w)};
}

inline void update_alpha_shape(GammaShapeChainState& state, const ShapeHyper& hyper, RngState& rng,
                               AugmentationScheme scheme = kDefaultScheme) {
  if (scheme == AugmentationScheme::printed) {
    const auto cond = shape_conditional(state, hyper);
    state.alpha_tilde = truncated_normal_sample(cond.mean, cond.variance, -1.0, rng);
    return;
  }
  const double sum_w = std::accumulate(state.w.begin(), state.w.end(), 0.0);
  if (!(sum_w > 0.0)) throw std::domain_error("update_alpha_shape: sum of auxiliaries must be > 0");
  const auto bp = static_cast<double>(hyper.b);
  const double alpha = power_normal_sample(sum_w, EulerGamma::value * bp + hyper.log_beta_y, bp, rng);
  state.alpha_tilde = alpha - 1.0;
}

namespace detail {

inline PosteriorSamples run_shape(std::span<const double> y, const GammaShapePrior& prior,
                                  const ChainConfig& config, RngState rng, std::size_t chain_index,
                                  AugmentationScheme scheme) {
  config.validate();
  const auto hyper = shape_hyper(y, prior);
  if (hyper.b < 1) throw std::invalid_argument("run_shape_chain: b' must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  GammaShapeChainState state;
  state.alpha_tilde = std::max(ybar * prior.beta - 1.0, -0.5);

  PosteriorSamples out;
  out.names = {"alpha"};
  out.draws.reserve(config.retained());
  for (std::size_t i = 0; i < config.iterations; ++i) {
    update_w_shape(state, hyper, config.pig_config, rng, scheme);
    update_alpha_shape(state, hyper, rng, scheme);
    if (!(state.alpha_tilde > -1.0)) throw std::logic_error("run_shape_chain: alpha~ left its support");
    if (config.keeps(i)) out.draws.push_back(state.alpha_tilde + 1.0);
  }
  ChainMeta meta;
  meta.config = config;
  meta.seed = config.seed;
  meta.chain_index = chain_index;
  meta.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.chains.push_back(meta);
  return out;
}

}  // namespace detail

/// Alternates w and alpha~ updates from a moment-matched start
/// alpha~ = max(mean(y) beta - 1, -0.5). Draws are reported as alpha = alpha~ + 1.
inline PosteriorSamples run_shape_chain(std::span<const double> y, const GammaShapePrior& prior,
                                        const ChainConfig& config, AugmentationScheme scheme = kDefaultScheme) {
  return detail::run_shape(y, prior, config, RngState(config.seed), 0, scheme);
}

/// Independent chains on child streams of config.seed, concatenated in order.
inline PosteriorSamples run_shape_chains(std::span<const double> y, const GammaShapePrior& prior,
                                         const ChainConfig& config, std::size_t chains,
                                         AugmentationScheme scheme = kDefaultScheme) {
  if (chains < 1) throw std::invalid_argument("run_shape_chains: need at least one chain");
  if (chains == 1) return run_shape_chain(y, prior, config, scheme);
  const RngState root(config.seed);
  std::vector<std::future<PosteriorSamples>> jobs;
  for (std::size_t c = 0; c < chains; ++c) {
    jobs.push_back(std::async(std::launch::async, [&, c] { return detail::run_shape(y, prior, config, root.child(c), c, scheme); }));
  }
  std::vector<PosteriorSamples> parts;
  for (auto& j : jobs) parts.push_back(j.get());
  return merge(parts);
}

inline double shape_log_posterior(const ShapeHyper& hyper, double alpha) {
  return alpha * hyper.log_beta_y - static_cast<double>(hyper.b) * log_gamma(alpha);
}

/// Exact posterior of alpha on grid, trapezoid-normalized.
inline GridDensity shape_posterior_quadrature(std::span<const double> y, const GammaShapePrior& prior,
                                              std::span<const double> grid) {
  check_grid(grid);
  const auto hyper = shape_hyper(y, prior);
  std::vector<double> logd(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) logd[i] = shape_log_posterior(hyper, grid[i]);
  return normalize_on_grid(grid, std::move(logd));
}

/// As above on a grid chosen by adaptive_quadrature.
inline GridDensity shape_posterior_quadrature(std::span<const double> y, const GammaShapePrior& prior) {
  const auto hyper = shape_hyper(y, prior);
  return adaptive_quadrature([&](double a) { return shape_log_posterior(hyper, a); });
}

}  // namespace pig
