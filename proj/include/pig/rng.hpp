#pragma once

// Seeded random streams and the exact base samplers used by every Gibbs step:
// gamma (with log-scale output), Dirichlet, lower-truncated normal, inverse
// Gaussian and generalized inverse Gaussian.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "pig/config.hpp"

namespace pig {

/// A single-owner random stream. Child streams are derived from
/// (seed, stream id, index) through std::seed_seq.
class RngState {
 public:
  explicit RngState(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream), engine_(make_engine(seed, stream)) {}

  [[nodiscard]] RngState child(std::uint64_t index) const {
    return RngState(seed_, mix(stream_ * 0x9E3779B97F4A7C15ULL + index + 1));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  friend bool operator==(const RngState& a, const RngState& b) {
    return a.seed_ == b.seed_ && a.stream_ == b.stream_ && a.engine_ == b.engine_;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    // splitmix64 finalizer
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return Engine(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  Engine engine_;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

inline bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace detail

/// Standard normal via the polar method; the second variate is discarded.
inline double standard_normal(RngState& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

inline double exponential_sample(RngState& rng) { return -std::log(rng.uniform()); }

namespace detail {

// Gamma(shape, 1) for shape >= 1 by the Marsaglia-Tsang squeeze.
inline double standard_gamma_ge1(double shape, RngState& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

// log of a Gamma(shape, 1) draw; below shape 1 the U^{1/shape} boost is
// applied in log scale.
inline double log_standard_gamma(double shape, RngState& rng) {
  if (shape < 1.0) {
    const double boosted = std::log(standard_gamma_ge1(shape + 1.0, rng));
    return boosted + std::log(rng.uniform()) / shape;
  }
  return std::log(standard_gamma_ge1(shape, rng));
}

}  // namespace detail

/// log of a Gamma(shape, rate) draw.
inline double log_gamma_sample(double shape, double rate, RngState& rng) {
  detail::require(detail::positive_finite(shape) && detail::positive_finite(rate),
                  "gamma_sample: shape and rate must be finite and > 0");
  return detail::log_standard_gamma(shape, rng) - std::log(rate);
}

/// Gamma(shape, rate) draw with mean shape / rate.
inline double gamma_sample(double shape, double rate, RngState& rng) {
  if (shape >= 1.0 && std::isfinite(shape) && detail::positive_finite(rate)) {
    return detail::standard_gamma_ge1(shape, rng) / rate;
  }
  return std::exp(log_gamma_sample(shape, rate, rng));
}

struct DirichletDraw {
  std::vector<double> p;
  std::vector<double> log_p;
};

/// Dirichlet draw by normalized gammas, normalized in log space.
inline DirichletDraw dirichlet_log_sample(std::span<const double> conc, RngState& rng) {
  detail::require(!conc.empty(), "dirichlet_log_sample: empty concentration vector");
  DirichletDraw out;
  out.log_p.resize(conc.size());
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < conc.size(); ++k) {
    detail::require(detail::positive_finite(conc[k]),
                    "dirichlet_log_sample: concentrations must be finite and > 0");
    out.log_p[k] = detail::log_standard_gamma(conc[k], rng);
    max_log = std::max(max_log, out.log_p[k]);
  }
  double acc = 0.0;
  for (double lg : out.log_p) acc += std::exp(lg - max_log);
  const double log_total = max_log + std::log(acc);
  out.p.resize(conc.size());
  for (std::size_t k = 0; k < conc.size(); ++k) {
    out.log_p[k] -= log_total;
    out.p[k] = std::exp(out.log_p[k]);
  }
  return out;
}

/// Draw from N(mean, variance) conditioned on value > lower.
///
/// Inverse CDF on the upper tail when the standardized bound is at most 4;
/// beyond that, rejection from a shifted exponential with the optimal rate.
inline double truncated_normal_sample(double mean, double variance, double lower,
                                      RngState& rng) {
  detail::require(detail::positive_finite(variance),
                  "truncated_normal_sample: variance must be finite and > 0");
  detail::require(std::isfinite(mean) && !std::isnan(lower),
                  "truncated_normal_sample: mean must be finite");
  const double sd = std::sqrt(variance);
  const double z0 = (lower - mean) / sd;
  constexpr double kTailSwitch = 4.0;
  if (z0 > kTailSwitch) {
    const double rate = 0.5 * (z0 + std::sqrt(z0 * z0 + 4.0));
    for (;;) {
      // excess over the bound, measured from lower
      const double excess = exponential_sample(rng) / rate;
      const double gap = z0 + excess - rate;
      if (rng.uniform() <= std::exp(-0.5 * gap * gap)) {
        const double x = lower + sd * excess;
        if (x > lower) return x;
      }
    }
  }
  // Q(z) = P(Z > z) = erfc(z / sqrt 2) / 2
  const double q0 = 0.5 * std::erfc(z0 / std::numbers::sqrt2);
  for (;;) {
    const double q = rng.uniform() * q0;
    const double x = mean + sd * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
    if (x > lower) return x;
  }
}

/// Draw from the density proportional to x^power exp(-a x^2 + b x) on x > 0,
/// power >= 0, a > 0.
///
/// power = 0 is the truncated normal TN(b/2a, 1/2a). Otherwise, with x* the
/// mode, the proposal is whichever of two envelopes fits better:
///  - TN(x*, 1/2a): log x <= log x* + x/x* - 1 bounds the target, acceptance
///    exp(power (log r - r + 1)) with r = x/x*;
///  - Gamma(power + 1, power/x*): the ratio is exp(-a x^2 + 2a x* x), maximal
///    at x*, acceptance exp(-a (x - x*)^2).
/// The TN envelope is used while 2a >= power / x*^2, so both stay above ~0.7.
inline double power_normal_sample(double a, double b, double power, RngState& rng) {
  detail::require(detail::positive_finite(a) && std::isfinite(b) && power >= 0.0 && std::isfinite(power),
                  "power_normal_sample: need a > 0, finite b and power >= 0");
  if (power == 0.0) return truncated_normal_sample(b / (2.0 * a), 1.0 / (2.0 * a), 0.0, rng);
  const double mode = (b + std::sqrt(b * b + 8.0 * a * power)) / (4.0 * a);
  if (2.0 * a * mode * mode >= power) {
    for (;;) {
      const double x = truncated_normal_sample(mode, 1.0 / (2.0 * a), 0.0, rng);
      const double r = x / mode;
      if (std::log(rng.uniform()) <= power * (std::log(r) - r + 1.0)) return x;
    }
  }
  for (;;) {
    const double x = gamma_sample(power + 1.0, power / mode, rng);
    const double d = x - mode;
    if (std::log(rng.uniform()) <= -a * d * d) return x;
  }
}

/// Inverse Gaussian with the given mean and shape (Michael, Schucany & Haas).
inline double inverse_gaussian_sample(double mean, double shape, RngState& rng) {
  detail::require(detail::positive_finite(mean) && detail::positive_finite(shape),
                  "inverse_gaussian_sample: mean and shape must be finite and > 0");
  const double n = standard_normal(rng);
  const double r = mean * n * n;
  const double s = std::sqrt(4.0 * shape * r + r * r);
  // mean + mean/(2 shape) (r - s), rearranged
  const double x = mean * (s - r) / (s + r);
  if (rng.uniform() * (mean + x) <= mean) return x;
  return mean * mean / x;
}

/// GIG(order, chi, tilt) with density proportional to
///   x^{order - 1} exp{-(chi^2 / x + tilt^2 x) / 2},  x > 0.
struct GigParams {
  double order = 0.0;
  double chi = 0.0;
  double tilt = 0.0;

  void validate() const {
    detail::require(std::isfinite(order) && std::isfinite(chi) && std::isfinite(tilt),
                    "GigParams: parameters must be finite");
    detail::require(chi >= 0.0 && tilt >= 0.0, "GigParams: chi and tilt must be >= 0");
    detail::require(chi > 0.0 || tilt > 0.0, "GigParams: chi and tilt cannot both be 0");
    detail::require(tilt > 0.0 || order < 0.0, "GigParams: tilt = 0 requires order < 0");
    detail::require(chi > 0.0 || order > 0.0, "GigParams: chi = 0 requires order > 0");
  }
};

namespace detail {

// Samplers below draw Z with density proportional to
//   z^{lambda - 1} exp(-omega (z + 1/z) / 2),  lambda >= 0, omega > 0,
// following Hörmann & Leydold (2014).

inline double gig_mode(double lambda, double omega) {
  if (lambda >= 1.0) {
    return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
  }
  return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

inline double gig_rou_noshift(double lambda, double omega, RngState& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double ym =
      ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
  const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);
  for (;;) {
    const double u = um * rng.uniform();
    const double v = rng.uniform();
    const double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

inline double gig_rou_shift(double lambda, double omega, RngState& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);

  // Extremes of (x - xm) sqrt(f(x)) via the roots of a depressed cubic.
  const double a = -(2.0 * (lambda + 1.0) / omega + xm);
  const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
  const double c = xm;
  const double p = b - a * a / 3.0;
  const double q = (2.0 * a * a * a) / 27.0 - (a * b) / 3.0 + c;
  const double fi = std::acos(-q / (2.0 * std::sqrt(-(p * p * p) / 27.0)));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(fi / 3.0 + 4.0 / 3.0 * std::numbers::pi) - a / 3.0;
  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);

  for (;;) {
    const double u = uminus + rng.uniform() * (uplus - uminus);
    const double v = rng.uniform();
    const double x = u / v + xm;
    if (x > 0.0 && std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Non-T-concave region: 0 <= lambda < 1, small omega.
inline double gig_piecewise_hat(double lambda, double omega, RngState& rng) {
  const double xm = gig_mode(lambda, omega);
  const double x0 = omega / (1.0 - lambda);
  const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
  const double a1 = k0 * x0;
  double k1;
  double a2;
  double k2;
  double a3;
  if (x0 >= 2.0 / omega) {
    k1 = 0.0;
    a2 = 0.0;
    k2 = std::pow(x0, lambda - 1.0);
    a3 = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
  } else {
    k1 = std::exp(-omega);
    a2 = (lambda == 0.0) ? k1 * std::log(2.0 / (omega * omega))
                         : k1 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
    k2 = std::pow(2.0 / omega, lambda - 1.0);
    a3 = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double total = a1 + a2 + a3;
  for (;;) {
    double v = total * rng.uniform();
    double x;
    double hx;
    if (v <= a1) {
      x = x0 * v / a1;
      hx = k0;
    } else if ((v -= a1) <= a2) {
      if (lambda == 0.0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, lambda) + (lambda / k1 * v), 1.0 / lambda);
        hx = k1 * std::pow(x, lambda - 1.0);
      }
    } else {
      v -= a2;
      const double lo = std::max(x0, 2.0 / omega);
      x = -2.0 / omega * std::log(std::exp(-omega / 2.0 * lo) - omega / (2.0 * k2) * v);
      hx = k2 * std::exp(-omega / 2.0 * x);
    }
    const double u = rng.uniform() * hx;
    if (std::log(u) <= (lambda - 1.0) * std::log(x) - omega / 2.0 * (x + 1.0 / x)) return x;
  }
}

// Gamma(lambda, omega/2) proposal thinned by exp(-omega / (2z)). Acceptance is
// at least 0.6 for lambda >= 1, omega <= 1.
inline double gig_gamma_thinning(double lambda, double omega, RngState& rng) {
  for (;;) {
    const double z = standard_gamma_ge1(lambda, rng) * (2.0 / omega);
    if (rng.uniform() <= std::exp(-omega / (2.0 * z))) return z;
  }
}

inline double gig_standard(double lambda, double omega, RngState& rng) {
  if (lambda >= 1.0 && omega <= 1.0) return gig_gamma_thinning(lambda, omega, rng);
  if (lambda > 2.0 || omega > 3.0) return gig_rou_shift(lambda, omega, rng);
  if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) return gig_rou_noshift(lambda, omega, rng);
  return gig_piecewise_hat(lambda, omega, rng);
}

}  // namespace detail

/// Exact GIG draw.
inline double gig_sample(const GigParams& params, RngState& rng) {
  params.validate();
  const double lambda = params.order;
  if (params.tilt == 0.0) {
    // Reciprocal gamma: 1/x ~ Gamma(-order, chi^2 / 2).
    return 1.0 / gamma_sample(-lambda, 0.5 * params.chi * params.chi, rng);
  }
  if (params.chi == 0.0) {
    return gamma_sample(lambda, 0.5 * params.tilt * params.tilt, rng);
  }
  if (lambda == -0.5) {
    return inverse_gaussian_sample(params.chi / params.tilt, params.chi * params.chi, rng);
  }
  const double omega = params.chi * params.tilt;
  const double scale = params.chi / params.tilt;
  const double z = detail::gig_standard(std::abs(lambda), omega, rng);
  return lambda < 0.0 ? scale / z : scale * z;
}

}  // namespace pig
