// Copyright 2026 The mirrorbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <limits>

namespace mirrorbench {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// Stream derivation rule used everywhere a child seed is needed:
//
//   derive_seed(base, k) = mix64(mix64(base) + (k + 1) * 0x9E3779B97F4A7C15)
//
// Instance k of a batch, read r of a sampler run and so on are all obtained
// this way, so any single unit of work can be replayed from (base, k) alone.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) noexcept {
  return mix64(mix64(base) + (k + 1) * kGoldenGamma);
}

// Counter-based 64-bit generator: the i-th output (0-based) of a generator
// seeded with s is mix64(s + (i + 1) * gamma). Unlike the <random> engines
// combined with std distributions, every value produced here is identical
// across compilers and platforms.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : counter_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    counter_ += kGoldenGamma;
    return mix64(counter_);
  }

  // Uniform integer in [0, bound) via Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  // +1 or -1 with equal probability.
  std::int8_t spin() noexcept { return ((*this)() >> 63) ? std::int8_t{-1} : std::int8_t{1}; }

 private:
  std::uint64_t counter_;
};

}  // namespace mirrorbench
