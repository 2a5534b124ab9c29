#pragma once

// Special-function kernels: log-gamma, digamma and the modified Bessel
// function of the second kind in log scale. All arguments are positive reals.

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/log1p.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "pig/config.hpp"

namespace pig {

struct EulerGamma {
  static constexpr double value = kEulerGamma;
};

namespace detail {

inline void require_positive(double x, const char* fn) {
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw std::domain_error(std::string(fn) + ": argument must be finite and > 0, got " +
                            std::to_string(x));
  }
}

}  // namespace detail

/// ln Γ(x) for x > 0.
inline double log_gamma(double x) {
  detail::require_positive(x, "log_gamma");
  return boost::math::lgamma(x);
}

/// ψ(x) for x > 0.
inline double digamma(double x) {
  detail::require_positive(x, "digamma");
  return boost::math::digamma(x);
}

inline double trigamma(double x) {
  detail::require_positive(x, "trigamma");
  return boost::math::trigamma(x);
}

/// log(1 + x) - x, accurate for small |x|.
inline double log1pmx(double x) { return boost::math::log1pmx(x); }

namespace detail {

// Hankel expansion of ln K_nu(x) for large x:
//   K_nu(x) ~ sqrt(pi / 2x) e^{-x} sum_k a_k(nu) / x^k.
inline double log_bessel_k_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) >= std::abs(term)) break;  // asymptotic series started diverging
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return 0.5 * std::log(M_PI / (2.0 * x)) - x + std::log(sum);
}

}  // namespace detail

/// ln K_order(x) for x > 0. K is even in the order.
///
/// Boost evaluates K directly where it is representable; beyond that the
/// Hankel expansion is used in log form.
inline double log_bessel_k(double order, double x) {
  detail::require_positive(x, "log_bessel_k");
  const double nu = std::abs(order);
  constexpr double kDirectLimit = 500.0;
  if (x < kDirectLimit) {
    using overflow_policy = boost::math::policies::policy<
        boost::math::policies::overflow_error<boost::math::policies::errno_on_error>>;
    const double k = boost::math::cyl_bessel_k(nu, x, overflow_policy());
    if (k > 0.0 && std::isfinite(k)) return std::log(k);
    if (nu > 0.0 && x < 1.0) {
      // K overflowed: leading small-argument term Γ(nu)/2 (2/x)^nu.
      return boost::math::lgamma(nu) - std::log(2.0) + nu * std::log(2.0 / x);
    }
  }
  return detail::log_bessel_k_asymptotic(nu, x);
}

}  // namespace pig
