#pragma once
// Deterministic counter-based random numbers.
//
// Every random quantity in the library is addressed as (seed, counter), so any
// matrix entry or sample in a stream can be produced independently of
// evaluation order or thread schedule.  The word generator is the SplitMix64
// finalizer applied to an affine counter walk; Gaussians use a fixed
// Box-Muller transform of two adjacent words.  The exact scheme is part of the
// output contract (see README, "Determinism") -- do not change it casually.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace nlse::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer: bijective 64-bit avalanche mix.
constexpr std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Word at position `counter` of the stream identified by `seed`.
constexpr std::uint64_t word_at(std::uint64_t seed, std::uint64_t counter) noexcept {
  return mix(seed + (counter + 1) * kGolden);
}

// Independent child stream (per-trial seeds, per-sample seeds, ...).
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix((seed ^ mix(stream + kGolden)) + kGolden);
}

// Uniform on (0, 1]; never 0, so log() in the Gaussian transform is safe.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) noexcept {
  return static_cast<double>((word_at(seed, counter) >> 11) + 1) * 0x1.0p-53;
}

// Standard normal via Box-Muller (cosine branch); consumes words 2c and 2c+1,
// so gaussian(seed, c) for c = 0,1,2,... never reuses a word.
inline double gaussian(std::uint64_t seed, std::uint64_t counter) noexcept {
  const double u1 = uniform01(seed, 2 * counter);
  const double u2 = uniform01(seed, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline void fill_gaussian(std::span<double> out, std::uint64_t seed,
                          std::uint64_t counter0 = 0) noexcept {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = gaussian(seed, counter0 + i);
}

}  // namespace nlse::rng
