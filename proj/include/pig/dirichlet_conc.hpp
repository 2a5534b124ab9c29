#pragma once

// Parameter-expanded Gibbs sampling of Dirichlet concentration parameters in
// the multinomial-Dirichlet model
//
//   n_m | p_m ~ Multinomial(p_m),  p_m | alpha ~ Dirichlet(alpha),
//   alpha_k ~ N(0, tau^2) truncated to alpha_k > 0,
//
// with gamma auxiliaries eta_m and P-IG auxiliaries w_mk, plus a quadrature
// oracle over the exact marginal posterior.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pig/chain.hpp"
#include "pig/config.hpp"
#include "pig/pig_dist.hpp"
#include "pig/quadrature.hpp"
#include "pig/rng.hpp"
#include "pig/special_fn.hpp"

namespace pig {

/// M x K nonnegative counts with labels. Every row must have at least one
/// count; M = 0 is allowed.
class CountMatrix {
 public:
  CountMatrix(std::size_t units, std::size_t categories, std::vector<std::int64_t> counts,
              std::vector<std::string> unit_labels = {},
              std::vector<std::string> category_labels = {})
      : units_(units),
        categories_(categories),
        counts_(std::move(counts)),
        unit_labels_(std::move(unit_labels)),
        category_labels_(std::move(category_labels)) {
    if (categories_ < 1) throw std::invalid_argument("CountMatrix: need at least one category");
    if (counts_.size() != units_ * categories_) {
      throw std::invalid_argument("CountMatrix: count vector has the wrong size");
    }
    if (unit_labels_.empty()) {
      for (std::size_t m = 0; m < units_; ++m) unit_labels_.push_back("unit_" + std::to_string(m + 1));
    }
    if (category_labels_.empty()) {
      for (std::size_t k = 0; k < categories_; ++k) {
        category_labels_.push_back("alpha_" + std::to_string(k + 1));
      }
    }
    if (unit_labels_.size() != units_ || category_labels_.size() != categories_) {
      throw std::invalid_argument("CountMatrix: label count does not match the matrix shape");
    }
    row_sums_.resize(units_);
    for (std::size_t m = 0; m < units_; ++m) {
      std::int64_t total = 0;
      for (std::size_t k = 0; k < categories_; ++k) {
        const auto n = (*this)(m, k);
        if (n < 0) {
          throw std::invalid_argument("CountMatrix: negative count for unit '" + unit_labels_[m] + "'");
        }
        total += n;
      }
      if (total < 1) {
        throw std::invalid_argument("CountMatrix: unit '" + unit_labels_[m] + "' has no counts");
      }
      row_sums_[m] = total;
    }
  }

  static CountMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows,
                               std::vector<std::string> unit_labels = {},
                               std::vector<std::string> category_labels = {}) {
    if (rows.empty()) throw std::invalid_argument("CountMatrix::from_rows: no rows");
    const std::size_t k = rows.front().size();
    std::vector<std::int64_t> flat;
    for (const auto& r : rows) {
      if (r.size() != k) throw std::invalid_argument("CountMatrix::from_rows: ragged rows");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return CountMatrix(rows.size(), k, std::move(flat), std::move(unit_labels),
                       std::move(category_labels));
  }

  std::size_t units() const { return units_; }
  std::size_t categories() const { return categories_; }
  std::int64_t operator()(std::size_t m, std::size_t k) const { return counts_[m * categories_ + k]; }
  std::span<const std::int64_t> row(std::size_t m) const {
    return std::span<const std::int64_t>(counts_).subspan(m * categories_, categories_);
  }
  std::int64_t row_sum(std::size_t m) const { return row_sums_[m]; }
  const std::vector<std::string>& unit_labels() const { return unit_labels_; }
  const std::vector<std::string>& category_labels() const { return category_labels_; }

  bool row_sums_consistent() const {
    for (std::size_t m = 0; m < units_; ++m) {
      const auto r = row(m);
      if (std::accumulate(r.begin(), r.end(), std::int64_t{0}) != row_sums_[m]) return false;
    }
    return true;
  }

  /// Column k of the result is column order[k] of this matrix.
  CountMatrix permute_categories(std::span<const std::size_t> order) const {
    if (order.size() != categories_) throw std::invalid_argument("permute_categories: bad order");
    std::vector<std::int64_t> flat(counts_.size());
    std::vector<std::string> labels(categories_);
    for (std::size_t k = 0; k < categories_; ++k) {
      labels[k] = category_labels_.at(order[k]);
      for (std::size_t m = 0; m < units_; ++m) flat[m * categories_ + k] = (*this)(m, order[k]);
    }
    return CountMatrix(units_, categories_, std::move(flat), unit_labels_, std::move(labels));
  }

  friend bool operator==(const CountMatrix&, const CountMatrix&) = default;

 private:
  std::size_t units_;
  std::size_t categories_;
  std::vector<std::int64_t> counts_;
  std::vector<std::string> unit_labels_;
  std::vector<std::string> category_labels_;
  std::vector<std::int64_t> row_sums_;
};

/// Truncated-normal prior N(0, tau^2) restricted to alpha > 0.
struct AlphaPrior {
  double tau = 1.0;

  /// tau such that the prior mean sqrt(2/pi) tau equals mean.
  static AlphaPrior from_mean(double mean) { return {mean * std::sqrt(std::numbers::pi / 2.0)}; }
  /// Prior mean 1/K.
  static AlphaPrior default_for(std::size_t categories) {
    return from_mean(1.0 / static_cast<double>(categories));
  }

  double prior_mean() const { return std::sqrt(2.0 / std::numbers::pi) * tau; }
  double log_density(double alpha) const { return -alpha * alpha / (2.0 * tau * tau); }

  void validate() const {
    if (!std::isfinite(tau) || !(tau > 0.0)) throw std::invalid_argument("AlphaPrior: tau must be > 0");
  }
};

struct DirichletChainState {
  std::vector<double> alpha;  // K
  std::vector<double> log_p;  // M x K
  std::vector<double> w;      // M x K
  std::vector<double> eta;    // M

  /// Throws std::logic_error if any positivity or simplex invariant fails.
  void check(const CountMatrix& counts) const {
    const std::size_t m_units = counts.units();
    const std::size_t k_cats = counts.categories();
    if (alpha.size() != k_cats || log_p.size() != m_units * k_cats || w.size() != m_units * k_cats ||
        eta.size() != m_units) {
      throw std::logic_error("DirichletChainState: shape mismatch");
    }
    for (double a : alpha) {
      if (!(a > 0.0) || !std::isfinite(a)) throw std::logic_error("DirichletChainState: alpha <= 0");
    }
    for (double e : eta) {
      if (!(e > 0.0) || !std::isfinite(e)) throw std::logic_error("DirichletChainState: eta <= 0");
    }
    for (double x : w) {
      if (!(x > 0.0) || !std::isfinite(x)) throw std::logic_error("DirichletChainState: w <= 0");
    }
    for (std::size_t m = 0; m < m_units; ++m) {
      double total = 0.0;
      for (std::size_t k = 0; k < k_cats; ++k) {
        const double lp = log_p[m * k_cats + k];
        if (std::isnan(lp) || lp > 0.0) throw std::logic_error("DirichletChainState: bad log_p");
        total += std::exp(lp);
      }
      if (std::abs(total - 1.0) > 1e-10) {
        throw std::logic_error("DirichletChainState: simplex row does not sum to 1");
      }
    }
  }
};

/// log p(n_m | alpha) without the multinomial coefficient:
///   log Γ(sum alpha) - log Γ(sum(n + alpha)) + sum_k [log Γ(n_k + alpha_k) - log Γ(alpha_k)].
inline double marginal_log_likelihood(std::span<const std::int64_t> counts,
                                      std::span<const double> alpha) {
  if (counts.size() != alpha.size()) {
    throw std::invalid_argument("marginal_log_likelihood: size mismatch");
  }
  double sum_alpha = 0.0;
  double sum_total = 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (counts[k] < 0) throw std::invalid_argument("marginal_log_likelihood: negative count");
    const double n = static_cast<double>(counts[k]);
    sum_alpha += alpha[k];
    sum_total += n + alpha[k];
    acc += log_gamma(n + alpha[k]) - log_gamma(alpha[k]);
  }
  return log_gamma(sum_alpha) - log_gamma(sum_total) + acc;
}

// ---------------------------------------------------------------------------
// Full conditionals

/// eta_m ~ Gamma(sum alpha + n_m., 1) under the printed scheme, or
/// Gamma(sum alpha, 1) under the marginal scheme. Consumes the stream in unit order.
inline void update_eta(DirichletChainState& state, const CountMatrix& counts, RngState& rng,
                       AugmentationScheme scheme = kDefaultScheme) {
  const double sum_alpha = std::accumulate(state.alpha.begin(), state.alpha.end(), 0.0);
  state.eta.resize(counts.units());
  for (std::size_t m = 0; m < counts.units(); ++m) {
    const double extra = scheme == AugmentationScheme::printed ? static_cast<double>(counts.row_sum(m)) : 0.0;
    state.eta[m] = gamma_sample(sum_alpha + extra, 1.0, rng);
  }
}

/// P-IG tilt for w_mk: sqrt(2 (n_mk + alpha_k - 1)^2) (printed) or sqrt(2) alpha_k (marginal).
inline double w_tilt(std::int64_t n, double alpha, AugmentationScheme scheme = kDefaultScheme) {
  const double t = scheme == AugmentationScheme::printed ? static_cast<double>(n) + alpha - 1.0 : alpha;
  return std::numbers::sqrt2 * std::abs(t);
}

inline void update_w(DirichletChainState& state, const CountMatrix& counts,
                     const PigSamplerConfig& pig_config, RngState& rng,
                     AugmentationScheme scheme = kDefaultScheme) {
  const std::size_t kc = counts.categories();
  state.w.resize(counts.units() * kc);
  for (std::size_t m = 0; m < counts.units(); ++m) {
    for (std::size_t k = 0; k < kc; ++k) {
      const auto params = PigParams::integer(w_tilt(counts(m, k), state.alpha[k], scheme));
      state.w[m * kc + k] = pig_sample(params, pig_config, rng);
    }
  }
}

/// p_m ~ Dirichlet(n_m + alpha), stored in log scale.
inline void update_p(DirichletChainState& state, const CountMatrix& counts, RngState& rng) {
  const std::size_t kc = counts.categories();
  state.log_p.resize(counts.units() * kc);
  std::vector<double> conc(kc);
  for (std::size_t m = 0; m < counts.units(); ++m) {
    for (std::size_t k = 0; k < kc; ++k) conc[k] = static_cast<double>(counts(m, k)) + state.alpha[k];
    const auto draw = dirichlet_log_sample(conc, rng);
    std::copy(draw.log_p.begin(), draw.log_p.end(), state.log_p.begin() + static_cast<std::ptrdiff_t>(m * kc));
  }
}

/// Coefficients of the alpha full conditional exp(-a alpha^2 + b alpha) times
/// alpha^power; power is 0 under the printed scheme.
struct AlphaConditional {
  double a = 0.0;
  double b = 0.0;
  double power = 0.0;

  double mean() const { return b / (2.0 * a); }
  double variance() const { return 1.0 / (2.0 * a); }
};

/// Printed scheme:
///   a = sum_m w_mk + 1/(2 tau^2)
///   b = -2 sum_m (n_mk - 1) w_mk + sum_m log eta_m + M γ + sum_m log p_mk
inline AlphaConditional alpha_conditional(const DirichletChainState& state, const CountMatrix& counts,
                                          const AlphaPrior& prior, std::size_t k,
                                          AugmentationScheme scheme = kDefaultScheme) {
  const std::size_t kc = counts.categories();
  const auto m_units = static_cast<double>(counts.units());
  AlphaConditional out;
  out.a = 1.0 / (2.0 * prior.tau * prior.tau);
  out.b = m_units * EulerGamma::value;
  for (std::size_t m = 0; m < counts.units(); ++m) {
    const double w = state.w[m * kc + k];
    out.a += w;
    if (scheme == AugmentationScheme::printed) {
      out.b += -2.0 * (static_cast<double>(counts(m, k)) - 1.0) * w;
    }
    out.b += std::log(state.eta[m]) + state.log_p[m * kc + k];
  }
  if (scheme == AugmentationScheme::marginal) out.power = m_units;
  return out;
}

/// Homogeneous alpha_1 = ... = alpha_K, summed over units:
///   a = sum_m sum_k w_mk + 1/(2 tau^2)
///   b = sum_m [-2 sum_k (n_mk - 1) w_mk + K log eta_m + sum_k (γ + log p_mk)]
/// For M = 1 this is the single-vector sampler term for term.
inline AlphaConditional homogeneous_alpha_conditional(const DirichletChainState& state,
                                                      const CountMatrix& counts,
                                                      const AlphaPrior& prior,
                                                      AugmentationScheme scheme = kDefaultScheme) {
  const std::size_t kc = counts.categories();
  AlphaConditional out;
  out.a = 1.0 / (2.0 * prior.tau * prior.tau);
  for (std::size_t m = 0; m < counts.units(); ++m) {
    out.b += static_cast<double>(kc) * std::log(state.eta[m]);
    for (std::size_t k = 0; k < kc; ++k) {
      const double w = state.w[m * kc + k];
      out.a += w;
      if (scheme == AugmentationScheme::printed) {
        out.b += -2.0 * (static_cast<double>(counts(m, k)) - 1.0) * w;
      }
      out.b += EulerGamma::value + state.log_p[m * kc + k];
    }
  }
  if (scheme == AugmentationScheme::marginal) out.power = static_cast<double>(counts.units() * kc);
  return out;
}

/// Draws alpha from cond; a truncated normal when cond.power is 0.
inline double sample_alpha_conditional(const AlphaConditional& cond, RngState& rng) {
  return power_normal_sample(cond.a, cond.b, cond.power, rng);
}

inline void update_alpha(DirichletChainState& state, const CountMatrix& counts, const AlphaPrior& prior,
                         RngState& rng, AugmentationScheme scheme = kDefaultScheme) {
  for (std::size_t k = 0; k < counts.categories(); ++k) {
    state.alpha[k] = sample_alpha_conditional(alpha_conditional(state, counts, prior, k, scheme), rng);
  }
}

inline void update_alpha_homogeneous(DirichletChainState& state, const CountMatrix& counts,
                                     const AlphaPrior& prior, RngState& rng,
                                     AugmentationScheme scheme = kDefaultScheme) {
  const double a = sample_alpha_conditional(homogeneous_alpha_conditional(state, counts, prior, scheme), rng);
  std::fill(state.alpha.begin(), state.alpha.end(), a);
}

struct SweepInfo {
  /// Some n_mk + alpha_k - 1 was negative when w was refreshed.
  bool negative_exponent = false;
};

inline bool has_negative_exponent(const DirichletChainState& state, const CountMatrix& counts) {
  for (std::size_t m = 0; m < counts.units(); ++m) {
    for (std::size_t k = 0; k < counts.categories(); ++k) {
      if (static_cast<double>(counts(m, k)) + state.alpha[k] - 1.0 < 0.0) return true;
    }
  }
  return false;
}

/// One systematic scan eta -> w -> p -> alpha.
inline SweepInfo gibbs_sweep(DirichletChainState& state, const CountMatrix& counts, const AlphaPrior& prior,
                             const PigSamplerConfig& pig_config, RngState& rng, bool homogeneous = false,
                             AugmentationScheme scheme = kDefaultScheme) {
  SweepInfo info;
  info.negative_exponent = scheme == AugmentationScheme::printed && has_negative_exponent(state, counts);
  update_eta(state, counts, rng, scheme);
  update_w(state, counts, pig_config, rng, scheme);
  update_p(state, counts, rng);
  if (homogeneous) update_alpha_homogeneous(state, counts, prior, rng, scheme);
  else update_alpha(state, counts, prior, rng, scheme);
  return info;
}

/// alpha at the prior mean, p at smoothed empirical proportions, then one
/// w pass and one eta pass.
inline DirichletChainState initial_state(const CountMatrix& counts, const AlphaPrior& prior,
                                         const PigSamplerConfig& pig_config, RngState& rng,
                                         AugmentationScheme scheme = kDefaultScheme) {
  const std::size_t kc = counts.categories();
  DirichletChainState state;
  state.alpha.assign(kc, prior.prior_mean());
  state.log_p.resize(counts.units() * kc);
  for (std::size_t m = 0; m < counts.units(); ++m) {
    const auto r = counts.row(m);
    const bool any_zero = std::find(r.begin(), r.end(), 0) != r.end();
    const double smooth = any_zero ? 0.5 : 0.0;
    const double total = static_cast<double>(counts.row_sum(m)) + smooth * static_cast<double>(kc);
    for (std::size_t k = 0; k < kc; ++k) {
      state.log_p[m * kc + k] = std::log((static_cast<double>(r[k]) + smooth) / total);
    }
  }
  update_w(state, counts, pig_config, rng, scheme);
  update_eta(state, counts, rng, scheme);
  return state;
}

struct DirichletRunOptions {
  AugmentationScheme scheme = kDefaultScheme;
  std::size_t chain_index = 0;
};

namespace detail {

inline PosteriorSamples run_dirichlet(const CountMatrix& counts, const AlphaPrior& prior,
                                      const ChainConfig& config, RngState rng,
                                      const DirichletRunOptions& opts) {
  config.validate();
  prior.validate();
  if (counts.units() == 0) {
    throw std::invalid_argument("run_chain: no units with counts; the data carry no information");
  }
  const auto start = std::chrono::steady_clock::now();
  const bool homogeneous = config.homogeneous;
  const std::size_t kc = counts.categories();

  PosteriorSamples out;
  if (homogeneous) {
    out.names = {"alpha"};
  } else {
    for (std::size_t k = 0; k < kc; ++k) out.names.push_back("alpha_" + std::to_string(k + 1));
  }
  out.draws.reserve(config.retained() * out.dims());

  ChainMeta meta;
  meta.config = config;
  meta.seed = config.seed;
  meta.chain_index = opts.chain_index;

  auto state = initial_state(counts, prior, config.pig_config, rng, opts.scheme);
  for (std::size_t i = 0; i < config.iterations; ++i) {
    const auto info = gibbs_sweep(state, counts, prior, config.pig_config, rng, homogeneous, opts.scheme);
    if (info.negative_exponent) ++meta.negative_exponent_sweeps;
    if ((i + 1) % kInvariantCheckEvery == 0) state.check(counts);
    if (config.keeps(i)) {
      if (homogeneous) out.draws.push_back(state.alpha.front());
      else out.draws.insert(out.draws.end(), state.alpha.begin(), state.alpha.begin() + static_cast<std::ptrdiff_t>(kc));
    }
  }
  meta.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.chains.push_back(meta);
  return out;
}

}  // namespace detail

/// Runs one chain seeded by config.seed and returns the thinned post-burn-in
/// alpha draws (S x K, or S x 1 when config.homogeneous is set).
inline PosteriorSamples run_chain(const CountMatrix& counts, const AlphaPrior& prior, const ChainConfig& config,
                                  AugmentationScheme scheme = kDefaultScheme) {
  return detail::run_dirichlet(counts, prior, config, RngState(config.seed), {scheme, 0});
}

inline PosteriorSamples run_chain_homogeneous(const CountMatrix& counts, const AlphaPrior& prior,
                                              ChainConfig config,
                                              AugmentationScheme scheme = kDefaultScheme) {
  config.homogeneous = true;
  return run_chain(counts, prior, config, scheme);
}

/// Independent chains on child streams of config.seed, run concurrently and
/// concatenated in chain order. One chain is identical to run_chain.
inline PosteriorSamples run_chains(const CountMatrix& counts, const AlphaPrior& prior, const ChainConfig& config,
                                   std::size_t chains, AugmentationScheme scheme = kDefaultScheme) {
  if (chains < 1) throw std::invalid_argument("run_chains: need at least one chain");
  if (chains == 1) return run_chain(counts, prior, config, scheme);
  const RngState root(config.seed);
  std::vector<std::future<PosteriorSamples>> jobs;
  for (std::size_t c = 0; c < chains; ++c) {
    jobs.push_back(std::async(std::launch::async, [&, c] {
      return detail::run_dirichlet(counts, prior, config, root.child(c), {scheme, c});
    }));
  }
  std::vector<PosteriorSamples> parts;
  for (auto& j : jobs) parts.push_back(j.get());
  return merge(parts);
}

// ---------------------------------------------------------------------------
// Quadrature oracle

inline double homogeneous_log_posterior(const CountMatrix& counts, const AlphaPrior& prior, double alpha) {
  std::vector<double> a(counts.categories(), alpha);
  double acc = prior.log_density(alpha);
  for (std::size_t m = 0; m < counts.units(); ++m) acc += marginal_log_likelihood(counts.row(m), a);
  return acc;
}

/// Posterior of a homogeneous alpha tabulated on grid and normalized by the
/// trapezoid rule. The grid must reach the negligible tail and resolve the
/// density (see normalize_on_grid).
inline GridDensity quadrature_posterior(const CountMatrix& counts, const AlphaPrior& prior,
                                        std::span<const double> grid) {
  prior.validate();
  check_grid(grid);
  std::vector<double> logd(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) logd[i] = homogeneous_log_posterior(counts, prior, grid[i]);
  return normalize_on_grid(grid, std::move(logd));
}

/// Homogeneous posterior on a grid chosen by adaptive_quadrature.
inline GridDensity quadrature_posterior(const CountMatrix& counts, const AlphaPrior& prior) {
  prior.validate();
  return adaptive_quadrature([&](double a) { return homogeneous_log_posterior(counts, prior, a); });
}

/// Marginal posteriors of each alpha_k for K <= 2 by tensor-product quadrature.
inline std::vector<GridDensity> quadrature_posterior_marginals(const CountMatrix& counts, const AlphaPrior& prior,
                                                               std::span<const double> grid) {
  prior.validate();
  check_grid(grid);
  const std::size_t kc = counts.categories();
  if (kc > 2) throw std::invalid_argument("quadrature_posterior_marginals: only K <= 2 is supported");
  const std::size_t n = grid.size();
  if (kc == 1) {
    std::vector<double> logd(n);
    for (std::size_t i = 0; i < n; ++i) logd[i] = prior.log_density(grid[i]);
    return {normalize_on_grid(grid, std::move(logd))};
  }
  std::vector<double> joint(n * n);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::array<double, 2> a{grid[i], grid[j]};
      double lp = prior.log_density(a[0]) + prior.log_density(a[1]);
      for (std::size_t m = 0; m < counts.units(); ++m) lp += marginal_log_likelihood(counts.row(m), a);
      joint[i * n + j] = lp;
      peak = std::max(peak, lp);
    }
  }
  std::vector<GridDensity> out;
  for (std::size_t axis = 0; axis < 2; ++axis) {
    std::vector<double> logm(n);
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const double f0 = std::exp((axis == 0 ? joint[i * n + j] : joint[j * n + i]) - peak);
        const double f1 = std::exp((axis == 0 ? joint[i * n + j + 1] : joint[(j + 1) * n + i]) - peak);
        acc += 0.5 * (grid[j + 1] - grid[j]) * (f0 + f1);
      }
      logm[i] = std::log(acc);
    }
    out.push_back(normalize_on_grid(grid, std::move(logm)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Posterior predictive

/// For every retained draw alpha^(s), draws_per_sample simplex vectors
/// p* ~ Dirichlet(alpha^(s)). Homogeneous (one-column) samples need the
/// number of categories.
inline std::vector<std::vector<double>> posterior_predictive(const PosteriorSamples& samples,
                                                             std::size_t draws_per_sample, RngState& rng,
                                                             std::size_t categories = 0) {
  if (samples.size() == 0) throw std::invalid_argument("posterior_predictive: no samples");
  if (draws_per_sample < 1) throw std::invalid_argument("posterior_predictive: draws_per_sample must be >= 1");
  const std::size_t kc = samples.dims() == 1 ? categories : samples.dims();
  if (kc < 2) throw std::invalid_argument("posterior_predictive: need at least two categories");
  std::vector<std::vector<double>> out;
  out.reserve(samples.size() * draws_per_sample);
  std::vector<double> conc(kc);
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto r = samples.row(s);
    for (std::size_t k = 0; k < kc; ++k) conc[k] = samples.dims() == 1 ? r[0] : r[k];
    for (std::size_t j = 0; j < draws_per_sample; ++j) out.push_back(dirichlet_log_sample(conc, rng).p);
  }
  return out;
}

}  // namespace pig
