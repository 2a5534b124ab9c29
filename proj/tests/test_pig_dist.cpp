#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "pig/pig_dist.hpp"
#include "pig/summary.hpp"
#include "test_util.hpp"

using namespace pig;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

std::vector<double> pig_draws(const PigParams& p, const PigSamplerConfig& cfg, std::size_t n, std::uint64_t seed) {
  RngState rng(seed);
  std::vector<double> w(n);
  for (double& x : w) x = pig_sample(p, cfg, rng);
  return w;
}

double mc_transform(const std::vector<double>& w, double t, double* se) {
  std::vector<double> f(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) f[i] = std::exp(-t * t * w[i]);
  *se = iid_mcse(f);
  return sample_mean(f);
}

struct Closed {
  double c, t, value;
};

// 30-digit values of G(u)/G(v), G(x) = e^{-γx}/Γ(1+x), u = sqrt(t^2 + c^2/2), v = |c|/sqrt 2
const Closed kClosed[] = {
    {0.0, 0.5, 0.8455012816335291808},    {0.0, 1.0, 0.56145948356688516982},  {0.0, 2.0, 0.15761837584359669903},
    {1.0, 0.5, 0.87340971926130899444},   {1.0, 1.0, 0.60429973652330875938},  {1.0, 2.0, 0.17932183358698308671},
    {kSqrt2, 0.5, 0.88477696553158356351}, {kSqrt2, 1.0, 0.62795809429035408011},
    {kSqrt2, 2.0, 0.19492391678234897354}, {3.0, 0.5, 0.91343100467407572828},  {3.0, 1.0, 0.70081584430354600742},
    {3.0, 2.0, 0.26262002433496828109}};

}  // namespace

TEST(PigLaplaceProduct, Examples) {
  EXPECT_DOUBLE_EQ(pig_laplace_product(PigParams::integer(0.0), 0.0, 50), 1.0);
  EXPECT_NEAR(pig_laplace_product(PigParams::integer(0.0), 1.0, 100000), std::exp(-EulerGamma::value), 1e-4);
  EXPECT_NEAR(pig_laplace_product(PigParams::integer(kSqrt2), 0.0, 100000), 1.0, 1e-6);
}

TEST(PigLaplaceProduct, MonotoneInTermsAndMatchesOracle) {
  const auto p = PigParams::integer(1.0);
  double prev = 1.0;
  for (std::size_t n : {1, 2, 5, 10, 100, 1000}) {
    const double v = pig_laplace_product(p, 1.5, n);
    EXPECT_LT(v, prev);
    prev = v;
  }
  for (double c : {0.0, 1.0, 3.0}) {
    for (double t : {0.5, 2.0}) {
      EXPECT_NEAR(pig_log_laplace_product(PigParams::integer(c), t, 100000),
                  pig_test::log_product_oracle(t, c, 100000), 1e-10);
    }
  }
}

TEST(PigLaplaceClosed, Examples) {
  EXPECT_NEAR(pig_laplace_closed(PigParams::integer(0.0), 1.0), 0.5614594836, 1e-10);
  EXPECT_NEAR(pig_laplace_closed(PigParams::integer(0.0), 0.5),
              std::exp(-EulerGamma::value / 2.0) / std::tgamma(1.5), 1e-14);
  EXPECT_NEAR(pig_laplace_closed(PigParams::integer(0.0), 0.5),
              pig_laplace_product(PigParams::integer(0.0), 0.5, 1000000), 1e-5);
  const double expected = std::exp(EulerGamma::value * (1.0 - kSqrt2)) / std::tgamma(1.0 + kSqrt2);
  EXPECT_NEAR(pig_laplace_closed(PigParams::integer(kSqrt2), 1.0), expected, 1e-14);
  EXPECT_NEAR(std::log(expected), pig_log_laplace_product(PigParams::integer(kSqrt2), 1.0, 1000000), 1e-4);
}

TEST(PigLaplaceClosed, ReferenceValues) {
  for (const auto& r : kClosed) {
    EXPECT_NEAR(pig_laplace_closed(PigParams::integer(r.c), r.t), r.value, 1e-13) << r.c << " " << r.t;
  }
}

TEST(PigLaplaceClosed, AgreesWithProductAtMillionTerms) {
  for (double c : {0.0, 1.0, kSqrt2, 3.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const auto p = PigParams::integer(c);
      EXPECT_NEAR(pig_log_laplace_product(p, t, 1000000), pig_log_laplace_closed(p, t), 1e-4) << c << " " << t;
    }
  }
}

TEST(PigLaplaceClosed, ShiftedRule) {
  const auto p = PigParams::shifted(2.5, 1.0);
  EXPECT_NEAR(pig_laplace_closed(p, 0.7), 0.90437578058948255814, 1e-13);
  EXPECT_NEAR(pig_log_laplace_closed(p, 0.7), pig_log_laplace_product(p, 0.7, 1000000), 1e-4);
  EXPECT_NEAR(pig_log_laplace_product(p, 0.7, 1000), pig_test::log_product_oracle(0.7, 1.0, 1000, 1.5), 1e-12);
  // Shifted(1) is the Integer rule
  EXPECT_NEAR(pig_laplace_closed(PigParams::shifted(1.0, 2.0), 1.3), pig_laplace_closed(PigParams::integer(2.0), 1.3),
              1e-14);
}

TEST(PigLaplaceClosed, ExplicitRuleIsUnsupported) {
  PigParams p{ExplicitRule{{1.0, 2.0, 3.0}}, 0.0};
  EXPECT_THROW(pig_laplace_closed(p, 1.0), UnsupportedRuleError);
  EXPECT_NEAR(pig_laplace_product(p, 1.0, 1000), pig_laplace_product(PigParams::integer(0.0), 1.0, 3), 1e-15);
}

TEST(PigLaplaceClosed, TransformBounds) {
  for (double c : {0.0, 1.0, kSqrt2, 3.0}) {
    const auto p = PigParams::integer(c);
    EXPECT_DOUBLE_EQ(pig_laplace_closed(p, 0.0), 1.0);
    double prev = 1.0;
    for (int i = 1; i <= 16; ++i) {
      const double t = 0.25 * i;
      const double v = pig_laplace_closed(p, t);
      EXPECT_GT(v, 0.0);
      EXPECT_LT(v, prev) << c << " " << t;
      EXPECT_DOUBLE_EQ(pig_laplace_closed(p, -t), v);
      prev = v;
    }
  }
  EXPECT_GT(pig_log_laplace_closed(PigParams::integer(0.0), 1e3), -1e4);
}

TEST(ErgLaplace, Examples) {
  EXPECT_NEAR(erg_laplace(1.0, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(erg_laplace(2.0, 1.0), 0.5, 1e-14);
  EXPECT_NEAR(erg_laplace(1.0, 0.5), 2.0 / std::sqrt(std::numbers::pi), 1e-14);
  EXPECT_GT(erg_laplace(1.0, 0.5), 1.0);
  EXPECT_THROW(erg_laplace(0.0, 1.0), std::domain_error);
  EXPECT_THROW(erg_laplace(1.0, -1.0), std::domain_error);
}

TEST(GigTermMean, Examples) {
  EXPECT_NEAR(gig_term_mean(PigParams::integer(0.0), 1), 0.5, 1e-15);
  EXPECT_NEAR(gig_term_mean(PigParams::integer(0.0), 10), 0.005, 1e-15);
  EXPECT_NEAR(gig_term_mean(PigParams::integer(kSqrt2), 1), 0.25, 1e-15);
}

TEST(GigTermMean, MatchesBesselRatio) {
  for (double c : {0.5, 2.0, 7.0}) {
    for (std::size_t k : {1, 3, 40}) {
      const double delta = 1.0 / (kSqrt2 * static_cast<double>(k));
      const double bessel = delta / c * std::exp(log_bessel_k(-0.5, delta * c) - log_bessel_k(-1.5, delta * c));
      EXPECT_NEAR(gig_term_mean(PigParams::integer(c), k), bessel, 1e-12 * bessel);
    }
  }
}

TEST(PigTailMean, Examples) {
  const auto v = pig_tail_mean(PigParams::integer(0.0), PigSamplerConfig::validation());
  EXPECT_NEAR(v, 0.0005, 0.02 * 0.0005);
  EXPECT_NEAR(v, 0.00049975008333331666668, 1e-12);
  PigSamplerConfig at_horizon{kTailHorizon, kTailHorizon};
  const double only_remainder = pig_tail_mean(PigParams::integer(0.0), at_horizon);
  EXPECT_LE(only_remainder, 1.0 / (2.0 * kTailHorizon));
  EXPECT_GT(only_remainder, 0.0);
  const auto gibbs = PigSamplerConfig::gibbs();
  EXPECT_LT(pig_tail_mean(PigParams::integer(10.0), gibbs), pig_tail_mean(PigParams::integer(0.0), gibbs));
}

TEST(PigTailMean, ReferenceValuesAndDirectSum) {
  const auto gibbs = PigSamplerConfig::gibbs();
  // (ψ(201+v) - ψ(201)) / 2v with v = 10/sqrt 2, and ψ1(201)/2
  EXPECT_NEAR(pig_tail_mean(PigParams::integer(10.0), gibbs), 0.0024507939446726277031, 1e-12);
  EXPECT_NEAR(pig_tail_mean(PigParams::integer(0.0), gibbs), 0.0024937604166145842634, 1e-12);
  for (double c : {0.0, 1e-8, 0.3, 4.0}) {
    PigSamplerConfig cfg{50, 20000};
    const auto p = PigParams::shifted(1.7, c);
    double direct = 0.0;
    for (std::size_t k = 20000; k > 50; --k) direct += gig_term_mean(p, k);
    const double v = c / kSqrt2;
    const double h = 20000 + 0.7;
    const double remainder = v > 0 ? std::log1p(v / h) / (2 * v) : 0.5 / h;
    EXPECT_NEAR(pig_tail_mean(p, cfg), direct + remainder, 1e-12) << c;
  }
  PigParams expl{ExplicitRule{{1.0, 2.0, 3.0, 4.0}}, 1.0};
  PigSamplerConfig two{2, 10};
  EXPECT_NEAR(pig_tail_mean(expl, two), gig_term_mean(expl, 3) + gig_term_mean(expl, 4), 1e-15);
}

TEST(PigParams, Validation) {
  EXPECT_THROW(PigParams::shifted(0.0).validate(), std::domain_error);
  EXPECT_THROW(PigParams::shifted(-1.0).validate(), std::domain_error);
  EXPECT_THROW((PigParams{ExplicitRule{{}}, 0.0}.validate()), std::domain_error);
  EXPECT_THROW((PigParams{ExplicitRule{{1.0, -2.0}}, 0.0}.validate()), std::domain_error);
  EXPECT_THROW((PigParams{ExplicitRule{{1.0, 1e-9}, 1e-6}, 0.0}.validate()), std::domain_error);
  EXPECT_THROW(PigParams::integer(std::nan("")).validate(), std::domain_error);
  EXPECT_THROW((PigSamplerConfig{0, 10}.validate()), std::invalid_argument);
  EXPECT_THROW((PigSamplerConfig{20, 10}.validate()), std::invalid_argument);
  EXPECT_DOUBLE_EQ(PigParams::integer(-2.0).abs_tilt(), 2.0);
}

TEST(PigSample, TransformMatchesClosedFormUntilted) {
  const auto p = PigParams::integer(0.0);
  const auto w = pig_draws(p, PigSamplerConfig::validation(), 20000, 101);
  double se = 0.0;
  const double est = mc_transform(w, 1.0, &se);
  EXPECT_NEAR(est, pig_laplace_closed(p, 1.0), 3.0 * se + 1e-3);
}

TEST(PigSample, TransformMatchesClosedFormTilted) {
  const auto p = PigParams::integer(kSqrt2);
  const auto w = pig_draws(p, PigSamplerConfig::validation(), 20000, 102);
  double se = 0.0;
  const double est = mc_transform(w, 1.0, &se);
  EXPECT_NEAR(est, pig_laplace_closed(p, 1.0), 3.0 * se + 1e-3);
}

TEST(PigSample, TransformGridAtGibbsTruncation) {
  for (double c : {0.0, 1.0, 3.0}) {
    const auto p = PigParams::integer(c);
    const auto w = pig_draws(p, PigSamplerConfig::gibbs(), 20000, 103 + static_cast<std::uint64_t>(c));
    for (double t : {0.5, 1.0, 2.0}) {
      double se = 0.0;
      const double est = mc_transform(w, t, &se);
      EXPECT_NEAR(est, pig_laplace_closed(p, t), 3.0 * se + 1e-3) << c << " " << t;
    }
  }
}

TEST(PigSample, TiltedMeanMatchesTermMeanSeries) {
  // sum_k 1/(2k(k + sqrt 2)) = (ψ(1 + sqrt 2) - ψ(1)) / (2 sqrt 2)
  const double truth = 0.43749149801047518573;
  const auto w = pig_draws(PigParams::integer(2.0), PigSamplerConfig::gibbs(), 200000, 104);
  EXPECT_NEAR(sample_mean(w), truth, 4.0 * iid_mcse(w));
}

TEST(PigSample, TiltMonotonicityOfTransform) {
  const auto cfg = PigSamplerConfig::gibbs();
  double prev = 0.0;
  double prev_se = 0.0;
  for (double c : {0.0, 1.0, 3.0}) {
    const auto w = pig_draws(PigParams::integer(c), cfg, 20000, 105);
    double se = 0.0;
    const double est = mc_transform(w, 1.0, &se);
    EXPECT_GT(est, prev - 3.0 * std::hypot(se, prev_se)) << c;
    prev = est;
    prev_se = se;
  }
}

TEST(PigSample, PositiveDeterministicAndShiftedOrExplicit) {
  const auto cfg = PigSamplerConfig::gibbs();
  const auto a = pig_draws(PigParams::integer(0.7), cfg, 200, 9);
  const auto b = pig_draws(PigParams::integer(0.7), cfg, 200, 9);
  EXPECT_EQ(a, b);
  for (double x : a) EXPECT_GT(x, 0.0);
  const auto s = pig_draws(PigParams::shifted(3.0, 1.0), cfg, 20000, 10);
  double se = 0.0;
  EXPECT_NEAR(mc_transform(s, 1.0, &se), pig_laplace_closed(PigParams::shifted(3.0, 1.0), 1.0), 3.0 * se + 1e-3);
  PigParams expl{ExplicitRule{{0.5, 1.5, 4.0}}, 1.0};
  const auto e = pig_draws(expl, cfg, 20000, 11);
  EXPECT_NEAR(mc_transform(e, 1.0, &se), pig_laplace_product(expl, 1.0, 3), 3.0 * se);
}
