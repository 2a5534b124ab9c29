#pragma once

#include <cstddef>
#include <random>

namespace pig {

// std::mt19937_64 has a fully specified output sequence.
using Engine = std::mt19937_64;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Truncation defaults for the P-IG convolution sampler.
inline constexpr std::size_t kGibbsTruncTerms = 200;
inline constexpr std::size_t kValidationTruncTerms = 1000;
inline constexpr std::size_t kTailHorizon = 1000000;

// Chain invariants are checked every sweep in debug builds and every
// kReleaseCheckEvery sweeps otherwise.
#ifdef NDEBUG
inline constexpr std::size_t kInvariantCheckEvery = 100;
#else
inline constexpr std::size_t kInvariantCheckEvery = 1;
#endif

}  // namespace pig
