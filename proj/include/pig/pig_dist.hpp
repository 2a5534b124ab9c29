#pragma once

// The Pólya-inverse Gamma family P-IG(d, c): Laplace-transform evaluators, the
// per-term GIG means, and the truncated-convolution sampler
//
//   w = sum_{k=1}^{K_T} GIG(-3/2, 1/(sqrt(2) d_k), |c|) + E[sum_{k>K_T} ...].

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pig/config.hpp"
#include "pig/rng.hpp"
#include "pig/special_fn.hpp"

namespace pig {

/// d_k = k
struct IntegerRule {};

/// d_k = shift + k - 1, shift > 0
struct ShiftedRule {
  double shift = 1.0;
};

/// d_1..d_L given explicitly; the convolution is finite (no terms past L).
/// Entries must satisfy d_k >= growth_floor * k.
struct ExplicitRule {
  std::vector<double> d;
  double growth_floor = 1e-6;
};

using DRule = std::variant<IntegerRule, ShiftedRule, ExplicitRule>;

class UnsupportedRuleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PigParams {
  DRule rule = IntegerRule{};
  double tilt = 0.0;  // c; only |c| matters

  static PigParams integer(double c = 0.0) { return {IntegerRule{}, c}; }
  static PigParams shifted(double a, double c = 0.0) { return {ShiftedRule{a}, c}; }

  double abs_tilt() const { return std::abs(tilt); }

  /// Offset s with d_k = k + s, for the two closed-form rules.
  std::optional<double> offset() const {
    if (std::holds_alternative<IntegerRule>(rule)) return 0.0;
    if (const auto* s = std::get_if<ShiftedRule>(&rule)) return s->shift - 1.0;
    return std::nullopt;
  }

  /// Number of terms in the convolution, if finite.
  std::optional<std::size_t> length() const {
    if (const auto* e = std::get_if<ExplicitRule>(&rule)) return e->d.size();
    return std::nullopt;
  }

  /// d_k for k >= 1.
  double d(std::size_t k) const {
    if (const auto off = offset()) return static_cast<double>(k) + *off;
    return std::get<ExplicitRule>(rule).d.at(k - 1);
  }

  void validate() const {
    if (!std::isfinite(tilt)) throw std::domain_error("PigParams: tilt must be finite");
    if (const auto* s = std::get_if<ShiftedRule>(&rule)) {
      if (!(s->shift > 0.0) || !std::isfinite(s->shift)) {
        throw std::domain_error("PigParams: shifted rule needs a finite shift > 0");
      }
    }
    if (const auto* e = std::get_if<ExplicitRule>(&rule)) {
      if (e->d.empty()) throw std::domain_error("PigParams: explicit rule needs at least one d_k");
      if (!(e->growth_floor > 0.0)) {
        throw std::domain_error("PigParams: explicit rule growth floor must be > 0");
      }
      for (std::size_t i = 0; i < e->d.size(); ++i) {
        const double dk = e->d[i];
        if (!std::isfinite(dk) || !(dk > 0.0)) {
          throw std::domain_error("PigParams: d_" + std::to_string(i + 1) + " must be > 0");
        }
        if (dk < e->growth_floor * static_cast<double>(i + 1)) {
          throw std::domain_error("PigParams: d_" + std::to_string(i + 1) +
                                  " grows too slowly (d_k >= floor * k required)");
        }
      }
    }
  }
};

struct PigSamplerConfig {
  std::size_t trunc_terms = kGibbsTruncTerms;
  std::size_t tail_horizon = kTailHorizon;

  static PigSamplerConfig gibbs() { return {}; }
  static PigSamplerConfig validation() { return {kValidationTruncTerms, kTailHorizon}; }

  void validate() const {
    if (trunc_terms < 1) throw std::invalid_argument("PigSamplerConfig: trunc_terms must be >= 1");
    if (tail_horizon < trunc_terms) {
      throw std::invalid_argument("PigSamplerConfig: tail_horizon must be >= trunc_terms");
    }
  }
};

namespace detail {

inline std::size_t usable_terms(const PigParams& params, std::size_t terms) {
  const auto len = params.length();
  return len ? std::min(terms, *len) : terms;
}

// log of ((1 + u/d) e^{-u/d}) / ((1 + v/d) e^{-v/d})
inline double log_laplace_factor(double d, double u, double v) {
  return log1pmx(u / d) - log1pmx(v / d);
}

// log G(x) with G(x) = prod_k (1 + x/d_k) e^{-x/d_k} for d_k = k + s:
//   G(x) = Γ(1+s) / Γ(1+s+x) e^{ψ(1+s) x}.
inline double log_hadamard(double x, double s) {
  const double a = 1.0 + s;
  return digamma(a) * x + log_gamma(a) - log_gamma(a + x);
}

}  // namespace detail

/// log of the truncated product prod_{k=1}^{terms} of the tilted factors.
inline double pig_log_laplace_product(const PigParams& params, double t, std::size_t terms) {
  params.validate();
  if (terms < 1) throw std::invalid_argument("pig_laplace_product: terms must be >= 1");
  const double v = params.abs_tilt() / std::numbers::sqrt2;
  const double u = std::sqrt(t * t + v * v);
  const std::size_t n = detail::usable_terms(params, terms);
  double acc = 0.0;
  for (std::size_t k = n; k >= 1; --k) {  // small terms first
    acc += detail::log_laplace_factor(params.d(k), u, v);
  }
  return acc;
}

inline double pig_laplace_product(const PigParams& params, double t, std::size_t terms) {
  return std::exp(pig_log_laplace_product(params, t, terms));
}

/// log E[exp(-t^2 w)] in closed form, for the Integer and Shifted rules.
inline double pig_log_laplace_closed(const PigParams& params, double t) {
  params.validate();
  const auto off = params.offset();
  if (!off) {
    throw UnsupportedRuleError(
        "pig_laplace_closed: explicit d rule has no closed form; use the product form");
  }
  const double v = params.abs_tilt() / std::numbers::sqrt2;
  const double u = std::sqrt(t * t + v * v);
  return detail::log_hadamard(u, *off) - detail::log_hadamard(v, *off);
}

inline double pig_laplace_closed(const PigParams& params, double t) {
  return std::exp(pig_log_laplace_closed(params, t));
}

/// Γ(a) / Γ(a + t). A formula evaluator only; it exceeds 1 for some (a, t)
/// and is not claimed to be a transform there.
inline double erg_laplace(double a, double t) {
  if (!(t >= 0.0)) throw std::domain_error("erg_laplace: t must be >= 0");
  return std::exp(log_gamma(a) - log_gamma(a + t));
}

/// Mean of the k-th summand GIG(-3/2, delta_k, |c|), delta_k = 1/(sqrt 2 d_k):
///   delta_k^2 / (1 + delta_k |c|).
inline double gig_term_mean(const PigParams& params, std::size_t k) {
  if (k < 1) throw std::invalid_argument("gig_term_mean: k must be >= 1");
  const double dk = params.d(k);
  const double delta = 1.0 / (std::numbers::sqrt2 * dk);
  return delta * delta / (1.0 + delta * params.abs_tilt());
}

/// Mean of the discarded terms k > trunc_terms: the sum up to tail_horizon
/// plus an integral bound for what lies beyond it.
///
/// For d_k = k + s the summand is 1 / (2 (k+s)(k+s+v)), v = |c|/sqrt 2, whose
/// partial sums telescope into digamma differences.
inline double pig_tail_mean(const PigParams& params, const PigSamplerConfig& config) {
  params.validate();
  config.validate();
  const std::size_t lo = config.trunc_terms;
  if (const auto len = params.length()) {
    double acc = 0.0;
    for (std::size_t k = *len; k > lo; --k) acc += gig_term_mean(params, k);
    return acc;
  }
  const double s = *params.offset();
  const double v = params.abs_tilt() / std::numbers::sqrt2;
  const double a = static_cast<double>(lo) + 1.0 + s;
  const double h = static_cast<double>(config.tail_horizon) + s;
  constexpr double kSmallTilt = 1e-6;
  double partial;
  double remainder;
  if (v < kSmallTilt) {
    partial = 0.5 * (trigamma(a) - trigamma(h + 1.0));
    remainder = 0.5 / h;
  } else {
    partial = ((digamma(a + v) - digamma(a)) - (digamma(h + 1.0 + v) - digamma(h + 1.0))) /
              (2.0 * v);
    remainder = std::log1p(v / h) / (2.0 * v);
  }
  return partial + remainder;
}

/// One P-IG(d, c) draw from the truncated convolution plus its tail mean.
inline double pig_sample(const PigParams& params, const PigSamplerConfig& config, RngState& rng) {
  const double tail = pig_tail_mean(params, config);
  const double c = params.abs_tilt();
  const std::size_t n = detail::usable_terms(params, config.trunc_terms);
  double acc = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double dk = params.d(k);
    if (c == 0.0) {
      // Reciprocal gamma RΓ(3/2, 1/(4 d_k^2)).
      acc += 1.0 / gamma_sample(1.5, 0.25 / (dk * dk), rng);
    } else {
      acc += gig_sample(GigParams{-1.5, 1.0 / (std::numbers::sqrt2 * dk), c}, rng);
    }
  }
  return acc + tail;
}

}  // namespace pig
