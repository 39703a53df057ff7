//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

namespace seedmatch {

// Name written into result metadata so a run can be reproduced elsewhere.
inline constexpr std::string_view kRngAlgorithm = "splitmix64";

// SplitMix64 (Steele, Lea, Flood 2014). The n-th output is a pure function of
// (seed, n), so a stream can be addressed by counter as well as iterated.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t operator()() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = (*this)();
      if (x >= threshold) return x % bound;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

 private:
  std::uint64_t state_;
};

// Order-sensitive 64-bit hash of a tuple of integers; used to derive
// independent per-replicate streams from a master seed.
inline std::uint64_t hash64(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (const std::uint64_t w : words) {
    h = SplitMix64::mix(h + SplitMix64::kGamma + SplitMix64::mix(w));
  }
  return h;
}

// Fisher-Yates shuffle with a portable index draw (std::shuffle's draw
// sequence is implementation-defined).
template <class T>
void shuffle(std::span<T> values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

// Uniformly random permutation of {0, ..., n-1} as an index vector.
inline std::vector<std::size_t> random_indices(std::size_t n, SplitMix64& rng) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  shuffle(std::span<std::size_t>(out), rng);
  return out;
}

}  // namespace seedmatch
