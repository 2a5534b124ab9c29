// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any gated
// criterion fails. Lines marked "info" are reported but not gated.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pig/commands.hpp"
#include "pig/dirichlet_conc.hpp"
#include "pig/gamma_shape.hpp"
#include "pig/io.hpp"
#include "pig/pig_dist.hpp"
#include "pig/quadrature.hpp"
#include "pig/rng.hpp"
#include "pig/summary.hpp"

using namespace pig;
namespace fs = std::filesystem;

namespace {

const std::string kDataDir = PIG_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [miss]");
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

int g_failures = 0;

void report(int id, const std::string& title, const Outcome& o, double seconds, bool gated = true) {
  if (!gated) {
    std::printf("note %d %s %s (%s) [%.1f s]\n", id, o.pass ? "agrees" : "disagrees", title.c_str(),
                o.detail.c_str(), seconds);
    std::fflush(stdout);
    return;
  }
  const char* verdict = o.pass ? "PASS" : "FAIL";
  std::printf("criterion %d %-5s %s (%s) [%.1f s]\n", id, verdict, title.c_str(), o.detail.c_str(), seconds);
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

template <class F>
void run(int id, const std::string& title, F body, double budget_seconds = 0.0) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("threw: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_seconds > 0.0) o.require(secs <= budget_seconds, "runtime " + fmt(secs) + " s <= " + fmt(budget_seconds));
  report(id, title, o, secs);
}

std::vector<double> pig_draws(const PigParams& p, std::size_t n, RngState rng) {
  std::vector<double> w(n);
  for (double& x : w) x = pig_sample(p, PigSamplerConfig::validation(), rng);
  return w;
}

void transform_checks(Outcome& o, double c, const std::vector<double>& w) {
  const auto p = PigParams::integer(c);
  for (double t : {0.5, 1.0, 2.0}) {
    const auto est = mc_transform(w, t);
    const double truth = pig_laplace_closed(p, t);
    const double tol = 3.0 * est.mcse + kTruncationBiasAllowance;
    o.require(std::abs(est.mean - truth) <= tol,
              "c=" + fmt(c) + " t=" + fmt(t) + ": " + fmt(est.mean) + " vs " + fmt(truth));
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pigtool");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  if (code != 0) std::cerr << err.str();
  return code;
}

// K = 3, M = 5, all counts <= 20
CountMatrix oracle_counts() {
  return CountMatrix::from_rows({{3, 7, 1}, {12, 5, 2}, {4, 4, 9}, {1, 15, 6}, {8, 2, 3}});
}

void compare_to_oracle(Outcome& o, const std::vector<double>& x, const GridDensity& oracle) {
  const double mcse = batch_means_mcse(x);
  const double ks = ks_distance(x, [&](double v) { return oracle.cdf(v); });
  o.require(std::abs(sample_mean(x) - oracle.mean()) <= 3.0 * mcse,
            "mean " + fmt(sample_mean(x)) + " vs " + fmt(oracle.mean()) + " (3 MCSE " + fmt(3.0 * mcse) + ")");
  o.require(std::abs(sample_sd(x) / oracle.sd() - 1.0) <= 0.1,
            "sd " + fmt(sample_sd(x)) + " vs " + fmt(oracle.sd()));
  o.require(ks <= 0.08, "KS " + fmt(ks));
}

}  // namespace

int main() {
  const RngState root(20240611);

  run(1, "untilted transform identity", [&](Outcome& o) {
    transform_checks(o, 0.0, pig_draws(PigParams::integer(0.0), 100000, root.child(1)));
  }, 120.0);

  run(2, "tilted transform and product form", [&](Outcome& o) {
    const double tilts[] = {1.0, std::numbers::sqrt2, 3.0};
    std::vector<std::future<std::vector<double>>> jobs;
    for (std::size_t i = 0; i < 3; ++i) {
      jobs.push_back(std::async(std::launch::async,
                                [&, i] { return pig_draws(PigParams::integer(tilts[i]), 100000, root.child(20 + i)); }));
    }
    for (std::size_t i = 0; i < 3; ++i) transform_checks(o, tilts[i], jobs[i].get());
    double worst = 0.0;
    for (double c : {0.0, 1.0, std::numbers::sqrt2, 3.0}) {
      for (double t : {0.5, 1.0, 2.0}) {
        const auto p = PigParams::integer(c);
        worst = std::max(worst, std::abs(pig_log_laplace_product(p, t, 1000000) - pig_log_laplace_closed(p, t)));
      }
    }
    o.require(worst <= 1e-4, "max |log product - log closed| " + fmt(worst));
  }, 120.0);

  run(3, "GIG mean and reciprocal-gamma branch", [&](Outcome& o) {
    auto rng = root.child(3);
    std::vector<double> x(1000000);
    for (double& v : x) v = gig_sample({-1.5, 1.0, 1.0}, rng);
    o.require(std::abs(sample_mean(x) - 0.5) <= 4.0 * iid_mcse(x),
              "mean " + fmt(sample_mean(x)) + " (4 MCSE " + fmt(4.0 * iid_mcse(x)) + ")");
    std::vector<double> a(100000);
    std::vector<double> b(100000);
    for (double& v : a) v = gig_sample({-1.5, 1.0, 0.0}, rng);
    for (double& v : b) v = 1.0 / gamma_sample(1.5, 0.5, rng);
    const double ks = ks_two_sample(a, b);
    o.require(ks <= 0.01, "KS " + fmt(ks));
  });

  run(4, "gamma shape, 200 obs from Gamma(3,2)", [&](Outcome& o) {
    const auto y = parse_reals_csv(kDataDir + "/gamma_3_2_n200.csv");
    const GammaShapePrior prior{1.0, 1, 0.0, 2.0};
    ChainConfig cfg;
    cfg.iterations = 1000;
    cfg.burn_in = 500;
    cfg.seed = 2024;
    const auto s = run_shape_chain(y, prior, cfg);
    o.require(s.size() == 500, "retained " + std::to_string(s.size()));
    const auto oracle = shape_posterior_quadrature(y, prior);
    const auto x = s.column(0);
    const double ks = ks_distance(x, [&](double v) { return oracle.cdf(v); });
    o.require(ks <= 0.08, "KS " + fmt(ks));
    const double mcse = batch_means_mcse(x);
    o.require(std::abs(sample_mean(x) - oracle.mean()) <= 3.0 * mcse,
              "mean " + fmt(sample_mean(x)) + " vs " + fmt(oracle.mean()) + " (3 MCSE " + fmt(3.0 * mcse) + ")");
  }, 300.0);

  const auto counts = oracle_counts();
  const AlphaPrior prior5 = AlphaPrior::default_for(3);
  const auto oracle5 = quadrature_posterior(counts, prior5);
  ChainConfig cfg5;
  cfg5.iterations = 3000;
  cfg5.burn_in = 1000;
  cfg5.seed = 5;

  run(5, "homogeneous Dirichlet vs quadrature", [&](Outcome& o) {
    const auto s = run_chain_homogeneous(counts, prior5, cfg5);
    o.require(s.size() == 2000, "retained " + std::to_string(s.size()));
    compare_to_oracle(o, s.column(0), oracle5);
  }, 300.0);

  {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    const auto s = run_chain_homogeneous(counts, prior5, cfg5, AugmentationScheme::printed);
    compare_to_oracle(o, s.column(0), oracle5);
    o.detail = "printed scheme: " + o.detail;
    report(5, "homogeneous Dirichlet vs quadrature", o,
           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), false);
  }

  run(6, "alpha conditional coefficients", [&](Outcome& o) {
    const auto c1 = CountMatrix::from_rows({{2, 1}});
    DirichletChainState s;
    s.alpha = {1.0, 1.0};
    s.w = {0.5, 1.0};
    s.eta = {3.0};
    s.log_p = {std::log(0.6), std::log(0.4)};
    const auto c = alpha_conditional(s, c1, AlphaPrior{1.0}, 0, AugmentationScheme::printed);
    const double b = -1.0 + std::log(3.0) + EulerGamma::value + std::log(0.6);
    o.require(std::abs(c.a - 1.0) <= 1e-9, "a " + fmt(c.a));
    o.require(std::abs(c.b - b) <= 1e-9, "b " + fmt(c.b));
    o.require(std::abs(c.b - 0.165002) <= 5e-7, "b vs 0.165002 at print precision");
  });

  run(7, "truncated-normal prior mean, K=6", [&](Outcome& o) {
    const auto prior = AlphaPrior::default_for(6);
    auto rng = root.child(7);
    std::vector<double> x(1000000);
    for (double& v : x) v = truncated_normal_sample(0.0, prior.tau * prior.tau, 0.0, rng);
    o.require(std::abs(sample_mean(x) - 1.0 / 6.0) <= 4.0 * iid_mcse(x),
              "mean " + fmt(sample_mean(x)) + " (4 MCSE " + fmt(4.0 * iid_mcse(x)) + ")");
  });

  run(8, "pipeline on the opioid counts fixture", [&](Outcome& o) {
    const std::string fixture = kDataDir + "/opioid_counts.csv";
    const auto c = parse_counts_csv(fixture, 2);
    const auto r = c.row(0);
    const std::vector<std::int64_t> first(r.begin(), r.end());
    o.require(first == std::vector<std::int64_t>{118, 96, 298, 58, 170, 18}, "first row counts");
    o.require(c.row_sum(0) == 758, "n_1. = " + std::to_string(c.row_sum(0)));

    const auto base = fs::temp_directory_path() / "pig_acceptance";
    fs::remove_all(base);
    std::string predictive[2];
    std::string samples[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = (base / ("run" + std::to_string(rep))).string();
      const int fit = cli({"fit-dirichlet", "--counts", fixture, "--id-cols", "2", "--seed", "7", "--iters", "2000",
                           "--burnin", "500", "--out", dir});
      const int pred = cli({"predict", "--samples", dir + "/samples.csv", "--draws-per-sample", "5", "--seed", "7",
                            "--out", dir});
      o.require(fit == 0 && pred == 0, "exit codes " + std::to_string(fit) + "," + std::to_string(pred));
      samples[rep] = slurp(dir + "/samples.csv");
      predictive[rep] = slurp(dir + "/predictive.csv");
    }
    o.require(!samples[0].empty() && samples[0] == samples[1], "samples byte-identical");
    o.require(!predictive[0].empty() && predictive[0] == predictive[1], "predictive byte-identical");

    std::istringstream in(predictive[0]);
    std::string line;
    std::getline(in, line);
    std::size_t rows = 0;
    double group = 0.0;
    double worst = 0.0;
    bool positive = true;
    while (std::getline(in, line)) {
      const double v = std::stod(line.substr(line.find(',') + 1));
      positive = positive && v >= 0.0;
      group += v;
      if (++rows % 6 == 0) {
        worst = std::max(worst, std::abs(group - 1.0));
        group = 0.0;
      }
    }
    o.require(rows == 1500u * 5u * 6u && positive && worst <= 1e-10,
              std::to_string(rows) + " predictive values, max |sum - 1| " + fmt(worst));
    fs::remove_all(base);
  });

  std::printf("%s\n", g_failures == 0 ? "all gated criteria passed" : "some gated criteria FAILED");
  return g_failures == 0 ? 0 : 1;
}
