#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pig/pig_dist.hpp"

namespace pig {

/// Which augmented joint a Gibbs sampler targets.
///
/// `printed` uses the original full conditionals. For the
/// Dirichlet sampler that is eta_m with shape sum(alpha) + n_m., w_mk tilted
/// by n_mk + alpha_k - 1 and a truncated-normal alpha update; for the gamma
/// shape sampler, w_j tilted by alpha - 1 and a normal update of alpha - 1
/// truncated at -1.
///
/// `marginal` augments each 1/Γ(alpha) through
///   1/Γ(alpha) = alpha e^{γ alpha} E[e^{-alpha^2 w}],  w ~ P-IG(d, 0),
/// (and Γ(sum alpha) through a gamma variable in the Dirichlet model), so
/// the alpha-marginal of the augmented joint is the exact posterior for every
/// alpha > 0. The alpha update then has density proportional to
/// alpha^J exp(-a alpha^2 + b alpha), drawn by power_normal_sample.
enum class AugmentationScheme { printed, marginal };

/// Scheme used when none is given.
inline constexpr AugmentationScheme kDefaultScheme = AugmentationScheme::marginal;

inline std::string to_string(AugmentationScheme s) {
  return s == AugmentationScheme::printed ? "printed" : "marginal";
}

inline AugmentationScheme parse_scheme(const std::string& s) {
  if (s == "printed") return AugmentationScheme::printed;
  if (s == "marginal") return AugmentationScheme::marginal;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected printed|marginal)");
}

struct ChainConfig {
  std::size_t iterations = 5000;
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
  std::uint64_t seed = 1;
  PigSamplerConfig pig_config = PigSamplerConfig::gibbs();
  bool homogeneous = false;

  void validate() const {
    if (iterations < 1) throw std::invalid_argument("ChainConfig: iterations must be >= 1");
    if (burn_in >= iterations) throw std::invalid_argument("ChainConfig: burn_in must be < iterations");
    if (thin < 1) throw std::invalid_argument("ChainConfig: thin must be >= 1");
    pig_config.validate();
  }

  std::size_t retained() const { return (iterations - burn_in) / thin; }

  /// True when sweep i (0-based) is kept.
  bool keeps(std::size_t i) const { return i >= burn_in && (i - burn_in + 1) % thin == 0; }
};

struct ChainMeta {
  ChainConfig config;
  std::uint64_t seed = 0;
  std::size_t chain_index = 0;
  double wall_seconds = 0.0;
  /// Sweeps in which some n_mk + alpha_k - 1 < 0.
  std::size_t negative_exponent_sweeps = 0;
};

/// Retained draws, row-major S x dims.
struct PosteriorSamples {
  std::vector<std::string> names;
  std::vector<double> draws;
  std::vector<ChainMeta> chains;

  std::size_t dims() const { return names.size(); }
  std::size_t size() const { return names.empty() ? 0 : draws.size() / names.size(); }

  std::span<const double> row(std::size_t s) const {
    return std::span<const double>(draws).subspan(s * dims(), dims());
  }

  std::vector<double> column(std::size_t k) const {
    std::vector<double> out(size());
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = draws[s * dims() + k];
    return out;
  }
};

/// Concatenates chains in order, keeping each chain's metadata.
inline PosteriorSamples merge(std::span<const PosteriorSamples> parts) {
  PosteriorSamples out;
  if (parts.empty()) return out;
  out.names = parts.front().names;
  for (const auto& p : parts) {
    if (p.names != out.names) throw std::invalid_argument("merge: parameter names differ");
    out.draws.insert(out.draws.end(), p.draws.begin(), p.draws.end());
    out.chains.insert(out.chains.end(), p.chains.begin(), p.chains.end());
  }
  return out;
}

}  // namespace pig
