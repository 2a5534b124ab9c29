#pragma once

// Subcommands of the pigtool executable. run_cli is the whole program and
// is callable in-process for tests.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pig/config.hpp"
#include "pig/dirichlet_conc.hpp"
#include "pig/gamma_shape.hpp"
#include "pig/io.hpp"
#include "pig/pig_dist.hpp"
#include "pig/rng.hpp"
#include "pig/summary.hpp"

namespace pig {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitUsage = 2, kExitIo = 3 };

/// Invalid combination of settings.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// validate

struct ValidationCheck {
  std::string name;
  double statistic = 0.0;
  double truth = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks) {
      if (!c.pass) return false;
    }
    return !checks.empty();
  }
};

/// Allowance for the bias left by replacing the discarded series tail with
/// its mean, added to the Monte-Carlo tolerance of transform checks.
inline constexpr double kTruncationBiasAllowance = 1e-3;
/// Terms used when checking the product form against the closed form.
inline constexpr std::size_t kProductCheckTerms = 1000000;

namespace detail {

inline ValidationCheck within(std::string name, double stat, double truth, double tol) {
  return {std::move(name), stat, truth, tol, std::abs(stat - truth) <= tol};
}

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace detail

/// Monte-Carlo estimate of E[exp(-t^2 w)] and its standard error.
struct TransformEstimate {
  double mean = 0.0;
  double mcse = 0.0;
};

inline TransformEstimate mc_transform(std::span<const double> w, double t) {
  std::vector<double> f(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) f[i] = std::exp(-t * t * w[i]);
  return {sample_mean(f), iid_mcse(f)};
}

/// The self-test behind `pigtool validate`.
///
/// For c in {0, 1, sqrt 2, 3}: n_draws P-IG draws at the given truncation and
/// their transform at t in {0.5, 1, 2} against the closed form (3 MCSE plus
/// the truncation allowance), and product against closed form at 10^6 terms.
/// Then GIG means at (-3/2, 1, 1) and (-1/2, 2, 1), the reciprocal-gamma
/// branch by a two-sample KS test, and the truncated-normal prior mean.
inline ValidationReport run_validation(std::size_t n_draws, std::uint64_t seed, std::size_t trunc) {
  if (n_draws < kMinDiagnosticDraws) throw UsageError("validate: --draws must be at least 10");
  PigSamplerConfig cfg;
  cfg.trunc_terms = trunc;
  cfg.tail_horizon = std::max(cfg.tail_horizon, trunc);
  cfg.validate();
  const RngState root(seed);
  ValidationReport report;
  const double tilts[] = {0.0, 1.0, std::numbers::sqrt2, 3.0};
  const char* tilt_names[] = {"0", "1", "sqrt2", "3"};
  const double ts[] = {0.5, 1.0, 2.0};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto params = PigParams::integer(tilts[i]);
    auto rng = root.child(i);
    std::vector<double> w(n_draws);
    for (double& x : w) x = pig_sample(params, cfg, rng);
    for (double t : ts) {
      const auto est = mc_transform(w, t);
      report.checks.push_back(detail::within(
          "transform c=" + std::string(tilt_names[i]) + " t=" + detail::fmt(t), est.mean,
          pig_laplace_closed(params, t), 3.0 * est.mcse + kTruncationBiasAllowance));
    }
    for (double t : ts) {
      report.checks.push_back(detail::within(
          "log product-vs-closed c=" + std::string(tilt_names[i]) + " t=" + detail::fmt(t),
          pig_log_laplace_product(params, t, kProductCheckTerms), pig_log_laplace_closed(params, t), 1e-4));
    }
  }
  struct GigCase {
    const char* name;
    GigParams params;
    double truth;
  };
  const GigCase gig_cases[] = {{"gig mean (-3/2, 1, 1)", {-1.5, 1.0, 1.0}, 0.5},
                               {"gig mean (-1/2, 2, 1)", {-0.5, 2.0, 1.0}, 2.0}};
  std::uint64_t stream = 4;
  for (const auto& gc : gig_cases) {
    auto rng = root.child(stream++);
    std::vector<double> x(n_draws);
    for (double& v : x) v = gig_sample(gc.params, rng);
    report.checks.push_back(detail::within(gc.name, sample_mean(x), gc.truth, 4.0 * iid_mcse(x)));
  }
  {
    auto rng = root.child(stream++);
    std::vector<double> a(n_draws);
    std::vector<double> b(n_draws);
    for (double& v : a) v = gig_sample({-1.5, 1.0, 0.0}, rng);
    for (double& v : b) v = 1.0 / gamma_sample(1.5, 0.5, rng);
    const double n = static_cast<double>(n_draws);
    // 1% critical value of the two-sample test, floored at 0.01
    const double tol = std::max(0.01, 1.63 * std::sqrt(2.0 / n));
    report.checks.push_back(detail::within("gig tilt=0 vs inverse gamma (KS)", ks_two_sample(a, b), 0.0, tol));
  }
  {
    auto rng = root.child(stream++);
    const auto prior = AlphaPrior::default_for(6);
    std::vector<double> x(n_draws);
    for (double& v : x) v = truncated_normal_sample(0.0, prior.tau * prior.tau, 0.0, rng);
    report.checks.push_back(detail::within("TN prior mean, K=6", sample_mean(x), 1.0 / 6.0, 4.0 * iid_mcse(x)));
  }
  return report;
}

inline void print_validation(std::ostream& out, const ValidationReport& r) {
  char line[256];
  std::snprintf(line, sizeof line, "%-36s %14s %14s %12s  %s\n", "check", "statistic", "truth", "tolerance",
                "result");
  out << line;
  for (const auto& c : r.checks) {
    std::snprintf(line, sizeof line, "%-36s %14.8g %14.8g %12.4g  %s\n", c.name.c_str(), c.statistic, c.truth,
                  c.tolerance, c.pass ? "PASS" : "FAIL");
    out << line;
  }
  out << (r.all_pass() ? "all checks passed\n" : "some checks FAILED\n");
}

// ---------------------------------------------------------------------------
// Shared option plumbing

struct ChainOptions {
  std::uint64_t seed = 1;
  std::size_t iterations = 5000;
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
  std::size_t trunc = kGibbsTruncTerms;
  std::size_t chains = 1;
  std::string out_dir = ".";

  ChainConfig chain_config() const {
    ChainConfig c;
    c.iterations = iterations;
    c.burn_in = burn_in;
    c.thin = thin;
    c.seed = seed;
    c.pig_config.trunc_terms = trunc;
    c.pig_config.tail_horizon = std::max(c.pig_config.tail_horizon, trunc);
    if (chains < 1) throw UsageError("--chains must be >= 1");
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

namespace detail {

inline void add_chain_options(CLI::App* sub, ChainOptions& o) {
  sub->add_option("--seed", o.seed, "random seed")->capture_default_str();
  sub->add_option("--iters", o.iterations, "Gibbs sweeps including burn-in")->capture_default_str();
  sub->add_option("--burnin", o.burn_in, "sweeps discarded before retaining draws")->capture_default_str();
  sub->add_option("--thin", o.thin, "keep every thin-th sweep after burn-in")->capture_default_str();
  sub->add_option("--trunc", o.trunc, "P-IG series terms drawn exactly")->capture_default_str();
  sub->add_option("--chains", o.chains, "independent chains on derived streams")->capture_default_str();
  sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
}

inline std::string out_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

inline void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

inline nlohmann::ordered_json chain_meta(const ChainOptions& o, const ChainConfig& c) {
  nlohmann::ordered_json m;
  m["seed"] = o.seed;
  m["iterations"] = c.iterations;
  m["burn_in"] = c.burn_in;
  m["thin"] = c.thin;
  m["retained_per_chain"] = c.retained();
  m["chains"] = o.chains;
  m["trunc_terms"] = c.pig_config.trunc_terms;
  m["tail_horizon"] = c.pig_config.tail_horizon;
  m["generator"] = "mt19937_64";
  return m;
}

inline void print_summary(std::ostream& out, const SummaryReport& r) {
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %10s %10s %10s %10s %10s %10s %9s\n", "parameter", "mean", "sd", "q025",
                "q50", "q975", "mcse", "ess");
  out << line;
  for (const auto& p : r.parameters) {
    std::snprintf(line, sizeof line, "%-12s %10.5g %10.5g %10.5g %10.5g %10.5g %10.3g %9.1f\n", p.parameter.c_str(),
                  p.mean, p.sd, p.q025, p.q50, p.q975, p.mcse.value_or(NAN), p.ess.value_or(NAN));
    out << line;
  }
}

inline void write_fit_outputs(const std::string& dir, const PosteriorSamples& samples, const SummaryReport& report,
                              const nlohmann::ordered_json& meta) {
  ensure_dir(dir);
  std::ostringstream s;
  write_samples_csv(s, samples);
  write_text_file(out_path(dir, "samples.csv"), s.str());
  write_text_file(out_path(dir, "summary.json"), summary_json(report, meta));
  std::ostringstream l;
  write_long_csv(l, samples);
  write_text_file(out_path(dir, "plot.csv"), l.str());
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands

struct ValidateOptions {
  std::size_t draws = 20000;
  std::uint64_t seed = 1;
  std::size_t trunc = kValidationTruncTerms;
};

inline int cmd_validate(const ValidateOptions& o, std::ostream& out) {
  const auto report = run_validation(o.draws, o.seed, o.trunc);
  out << "P-IG self-test: draws=" << o.draws << " seed=" << o.seed << " trunc=" << o.trunc << "\n";
  print_validation(out, report);
  return report.all_pass() ? kExitOk : kExitValidation;
}

struct PigSampleOptions {
  std::size_t draws = 10000;
  std::uint64_t seed = 1;
  std::size_t trunc = kValidationTruncTerms;
  double tilt = 0.0;
  std::optional<double> shift;
  std::string out_dir = ".";
};

inline int cmd_pig_sample(const PigSampleOptions& o, std::ostream& out) {
  if (o.draws < 1) throw UsageError("pig-sample: --draws must be >= 1");
  const PigParams params = o.shift ? PigParams::shifted(*o.shift, o.tilt) : PigParams::integer(o.tilt);
  PigSamplerConfig cfg;
  cfg.trunc_terms = o.trunc;
  cfg.tail_horizon = std::max(cfg.tail_horizon, o.trunc);
  try {
    params.validate();
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  RngState rng(o.seed);
  std::vector<double> w(o.draws);
  for (double& x : w) x = pig_sample(params, cfg, rng);
  detail::ensure_dir(o.out_dir);
  std::ostringstream s;
  s << "draw,value\n";
  for (std::size_t i = 0; i < w.size(); ++i) s << (i + 1) << ',' << detail::format_double(w[i]) << '\n';
  const auto path = detail::out_path(o.out_dir, "pig_samples.csv");
  write_text_file(path, s.str());
  out << "wrote " << w.size() << " draws to " << path << "\n";
  out << "mean " << detail::fmt(sample_mean(w)) << "\n";
  if (w.size() >= 2) {
    const auto est = mc_transform(w, 1.0);
    out << "E[exp(-w)] " << detail::fmt(est.mean) << " +- " << detail::fmt(est.mcse) << " (closed form "
        << detail::fmt(pig_laplace_closed(params, 1.0)) << ")\n";
  }
  return kExitOk;
}

struct FitDirichletOptions {
  ChainOptions chain;
  std::string counts_path;
  std::size_t id_cols = 0;
  std::optional<double> tau;
  std::optional<double> mean_alpha;
  bool homogeneous = false;
  std::string scheme = to_string(kDefaultScheme);
};

inline int cmd_fit_dirichlet(const FitDirichletOptions& o, std::ostream& out) {
  auto config = o.chain.chain_config();
  config.homogeneous = o.homogeneous;
  AugmentationScheme scheme{};
  try {
    scheme = parse_scheme(o.scheme);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto counts = parse_counts_csv(o.counts_path, o.id_cols);
  if (counts.units() == 0) throw ParseError("'" + o.counts_path + "' has no data rows");
  if (counts.categories() < 2) throw ParseError("'" + o.counts_path + "' needs at least two count columns");
  AlphaPrior prior = AlphaPrior::default_for(counts.categories());
  if (o.tau && o.mean_alpha) throw UsageError("--tau and --mean-alpha are mutually exclusive");
  if (o.tau) prior.tau = *o.tau;
  if (o.mean_alpha) prior = AlphaPrior::from_mean(*o.mean_alpha);
  try {
    prior.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto samples = run_chains(counts, prior, config, o.chain.chains, scheme);
  const double secs = detail::seconds_since(t0);
  const auto report = summarize(samples);

  auto meta = detail::chain_meta(o.chain, config);
  meta["command"] = "fit-dirichlet";
  meta["counts"] = o.counts_path;
  meta["units"] = counts.units();
  meta["scheme"] = to_string(scheme);
  meta["homogeneous"] = o.homogeneous;
  meta["tau"] = prior.tau;
  meta["prior_mean"] = prior.prior_mean();
  nlohmann::ordered_json cats = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < counts.categories(); ++k) {
    cats["alpha_" + std::to_string(k + 1)] = counts.category_labels()[k];
  }
  meta["categories"] = cats;
  std::size_t neg = 0;
  for (const auto& c : samples.chains) neg += c.negative_exponent_sweeps;
  if (scheme == AugmentationScheme::printed) meta["negative_exponent_sweeps"] = neg;
  detail::write_fit_outputs(o.chain.out_dir, samples, report, meta);

  out << "fit-dirichlet: " << counts.units() << " units x " << counts.categories() << " categories, scheme "
      << to_string(scheme) << ", " << samples.size() << " retained draws in " << detail::fmt(secs) << " s\n";
  detail::print_summary(out, report);
  if (scheme == AugmentationScheme::printed && neg > 0) {
    out << "note: " << neg << " sweeps had some n_mk + alpha_k - 1 < 0\n";
  }
  out << "outputs in " << o.chain.out_dir << "\n";
  return kExitOk;
}

struct FitGammaShapeOptions {
  ChainOptions chain;
  std::string data_path;
  GammaShapePrior prior;
  std::string scheme = to_string(kDefaultScheme);
};

inline int cmd_fit_gamma_shape(const FitGammaShapeOptions& o, std::ostream& out) {
  const auto config = o.chain.chain_config();
  try {
    o.prior.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  AugmentationScheme scheme{};
  try {
    scheme = parse_scheme(o.scheme);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto y = parse_reals_csv(o.data_path);
  const auto hyper = shape_hyper(y, o.prior);

  const auto t0 = std::chrono::steady_clock::now();
  const auto samples = run_shape_chains(y, o.prior, config, o.chain.chains, scheme);
  const double secs = detail::seconds_since(t0);
  const auto report = summarize(samples);
  const auto oracle = shape_posterior_quadrature(y, o.prior);

  auto meta = detail::chain_meta(o.chain, config);
  meta["command"] = "fit-gamma-shape";
  meta["data"] = o.data_path;
  meta["observations"] = y.size();
  meta["scheme"] = to_string(scheme);
  meta["prior"] = {{"a", o.prior.a}, {"b", o.prior.b}, {"c", o.prior.c}, {"beta", o.prior.beta}};
  meta["hyper"] = {{"log_a", hyper.log_a}, {"b", hyper.b}, {"c", hyper.c}, {"log_beta_y", hyper.log_beta_y}};
  meta["oracle"] = {{"mean", oracle.mean()}, {"sd", oracle.sd()}, {"mode", oracle.mode()}};
  detail::write_fit_outputs(o.chain.out_dir, samples, report, meta);
  std::ostringstream d;
  write_density_csv(d, oracle);
  write_text_file(detail::out_path(o.chain.out_dir, "oracle.csv"), d.str());

  out << "fit-gamma-shape: n=" << y.size() << ", " << samples.size() << " retained draws in " << detail::fmt(secs)
      << " s\n";
  detail::print_summary(out, report);
  out << "quadrature posterior: mean " << detail::fmt(oracle.mean()) << ", sd " << detail::fmt(oracle.sd()) << "\n";
  out << "outputs in " << o.chain.out_dir << "\n";
  return kExitOk;
}

struct PredictOptions {
  std::string samples_path;
  std::size_t draws_per_sample = 10;
  std::size_t categories = 0;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

inline int cmd_predict(const PredictOptions& o, std::ostream& out) {
  if (o.draws_per_sample < 1) throw UsageError("predict: --draws-per-sample must be >= 1");
  const auto samples = read_samples_csv(o.samples_path);
  for (double v : samples.draws) {
    if (!(v > 0.0)) throw ParseError("'" + o.samples_path + "' contains a non-positive concentration");
  }
  std::size_t kc = samples.dims();
  if (kc == 1) {
    if (o.categories < 2) throw UsageError("predict: single-column samples need --categories K >= 2");
    kc = o.categories;
  } else if (o.categories != 0 && o.categories != kc) {
    throw UsageError("predict: --categories disagrees with the samples file");
  }
  if (kc < 2) throw UsageError("predict: need at least two categories");
  RngState rng(o.seed);
  const auto draws = posterior_predictive(samples, o.draws_per_sample, rng, kc);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < kc; ++k) labels.push_back(std::to_string(k + 1));
  detail::ensure_dir(o.out_dir);
  std::ostringstream s;
  write_predictive_csv(s, draws, labels);
  const auto path = detail::out_path(o.out_dir, "predictive.csv");
  write_text_file(path, s.str());
  out << "predict: " << draws.size() << " simplex draws (" << samples.size() << " samples x "
      << o.draws_per_sample << ") over " << kc << " categories written to " << path << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Command line

namespace detail {

/// Reads flat `key=value` lines ('#' starts a comment) as `--key=value`
/// arguments.
inline std::vector<std::string> config_arguments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw UsageError(path + ": line " + std::to_string(n) + ": expected key=value");
    auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    while (key.starts_with("-")) key.remove_prefix(1);
    if (key.empty() || key == "config") {
      throw UsageError(path + ": line " + std::to_string(n) + ": invalid key");
    }
    args.push_back("--" + std::string(key) + "=" + std::string(value));
  }
  return args;
}

/// Expands `--config FILE` (or `--config=FILE`) after the subcommand into
/// the file's settings, placed before the remaining flags. Command-line
/// flags take precedence.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  if (args.size() < 2) return args;
  std::vector<std::string> rest;
  std::vector<std::string> from_file;
  bool found = false;
  for (std::size_t i = 2; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file name");
      path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    if (found) throw UsageError("--config given more than once");
    found = true;
    from_file = config_arguments(path);
  }
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app("P-IG sampling and Gibbs inference for Dirichlet concentration and gamma shape parameters",
               "pigtool");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for all subcommands");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  ValidateOptions vo;
  auto* validate = app.add_subcommand("validate", "self-test of transforms, GIG means and the TN prior");
  validate->add_option("--draws", vo.draws, "Monte-Carlo draws per check")->capture_default_str();
  validate->add_option("--seed", vo.seed, "random seed")->capture_default_str();
  validate->add_option("--trunc", vo.trunc, "P-IG series terms drawn exactly")->capture_default_str();

  PigSampleOptions po;
  double shift = 0.0;
  auto* pig_sample_cmd = app.add_subcommand("pig-sample", "draw from P-IG(d, c)");
  pig_sample_cmd->add_option("--draws", po.draws, "number of draws")->capture_default_str();
  pig_sample_cmd->add_option("--seed", po.seed, "random seed")->capture_default_str();
  pig_sample_cmd->add_option("--trunc", po.trunc, "series terms drawn exactly")->capture_default_str();
  pig_sample_cmd->add_option("--tilt,-c", po.tilt, "tilt c")->capture_default_str();
  auto* shift_opt = pig_sample_cmd->add_option("--shift", shift, "use d_k = shift + k - 1 instead of d_k = k");
  pig_sample_cmd->add_option("--out", po.out_dir, "output directory")->capture_default_str();

  FitDirichletOptions fo;
  double tau = 0.0;
  double mean_alpha = 0.0;
  auto* fit_dir = app.add_subcommand("fit-dirichlet", "Gibbs sampling of Dirichlet concentration parameters");
  detail::add_chain_options(fit_dir, fo.chain);
  fit_dir->add_option("--counts", fo.counts_path, "counts CSV")->required();
  fit_dir->add_option("--id-cols", fo.id_cols, "leading label columns")->capture_default_str();
  auto* tau_opt = fit_dir->add_option("--tau", tau, "prior scale tau");
  auto* mean_opt = fit_dir->add_option("--mean-alpha", mean_alpha, "prior mean of each alpha_k");
  tau_opt->excludes(mean_opt);
  fit_dir->add_flag("--homogeneous", fo.homogeneous, "one alpha shared by all categories");
  fit_dir->add_option("--scheme", fo.scheme, "augmentation scheme")
      ->check(CLI::IsMember({"marginal", "printed"}))
      ->capture_default_str();

  FitGammaShapeOptions go;
  auto* fit_shape = app.add_subcommand("fit-gamma-shape", "Gibbs sampling of a gamma shape parameter");
  detail::add_chain_options(fit_shape, go.chain);
  fit_shape->add_option("--data", go.data_path, "observations, one per line")->required();
  fit_shape->add_option("--beta", go.prior.beta, "known rate")->capture_default_str();
  fit_shape->add_option("--prior-a", go.prior.a, "prior a")->capture_default_str();
  fit_shape->add_option("--prior-b", go.prior.b, "prior b (nonnegative integer)")->capture_default_str();
  fit_shape->add_option("--prior-c", go.prior.c, "prior c")->capture_default_str();
  fit_shape->add_option("--scheme", go.scheme, "augmentation scheme")
      ->check(CLI::IsMember({"marginal", "printed"}))
      ->capture_default_str();

  PredictOptions pr;
  auto* predict = app.add_subcommand("predict", "posterior predictive simplex draws");
  predict->add_option("--samples", pr.samples_path, "samples CSV from fit-dirichlet")->required();
  predict->add_option("--draws-per-sample", pr.draws_per_sample, "draws per retained sample")
      ->capture_default_str();
  predict->add_option("--categories", pr.categories, "K for single-column (homogeneous) samples");
  predict->add_option("--seed", pr.seed, "random seed")->capture_default_str();
  predict->add_option("--out", pr.out_dir, "output directory")->capture_default_str();

  try {
    args = detail::expand_config(std::move(args));
    std::vector<std::string> rev(args.rbegin(), args.rend());
    rev.pop_back();  // program name
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }

  try {
    if (*validate) return cmd_validate(vo, out);
    if (*pig_sample_cmd) {
      if (shift_opt->count() > 0) po.shift = shift;
      return cmd_pig_sample(po, out);
    }
    if (*fit_dir) {
      if (tau_opt->count() > 0) fo.tau = tau;
      if (mean_opt->count() > 0) fo.mean_alpha = mean_alpha;
      return cmd_fit_dirichlet(fo, out);
    }
    if (*fit_shape) return cmd_fit_gamma_shape(go, out);
    if (*predict) return cmd_predict(pr, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace pig
