// Copyright 2026 The compwire Authors.
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

// Counter-based random numbers. Every draw is a pure function of
// (seed, sample index, lane), so a Monte Carlo run produces the same
// numbers no matter how samples are split across threads.
//
// Scheme: key = mix(seed + golden * (index + 1)), word = mix(key ^ (lane *
// 0xD1B54A32D192ED03 + 1)), where mix is the SplitMix64 finalizer. Uniforms
// take the top 53 bits of a word, shifted to the open interval (0, 1).
// Standard normals come in Box-Muller pairs: pair p of a sample consumes
// lanes 2p and 2p + 1.

#ifndef COMPWIRE_RNG_H_
#define COMPWIRE_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace compwire::rng {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t counter_word(std::uint64_t seed, std::uint64_t index,
                                     std::uint64_t lane) {
  const std::uint64_t key = mix64(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
  return mix64(key ^ (lane * 0xD1B54A32D192ED03ULL + 1));
}

// Uniform on (0, 1), never 0 or 1.
constexpr double uniform_open(std::uint64_t word) {
  return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

inline std::pair<double, double> gaussian_pair(std::uint64_t seed,
                                               std::uint64_t index,
                                               std::uint64_t pair) {
  const double u1 = uniform_open(counter_word(seed, index, 2 * pair));
  const double u2 = uniform_open(counter_word(seed, index, 2 * pair + 1));
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace compwire::rng

#endif  // COMPWIRE_RNG_H_
