// Copyright 2026 The Adaptive Lab Authors.
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

#ifndef ADAPTIVE_CORE_RNG_HPP_
#define ADAPTIVE_CORE_RNG_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace adaptive {

inline constexpr const char* kDefaultRngAlgorithm = "mt19937_64";

// Names a generator and its seed. Replicate r of any Monte Carlo loop draws
// from its own engine seeded with seed + r, so results do not depend on how
// replicates are scheduled.
struct RngSpec {
  std::string algorithm = kDefaultRngAlgorithm;
  std::uint64_t seed = 0;

  friend bool operator==(const RngSpec&, const RngSpec&) = default;
};

using Engine = std::mt19937_64;

inline Engine make_engine(const RngSpec& spec, std::uint64_t stream = 0) {
  if (spec.algorithm != kDefaultRngAlgorithm) {
    throw std::invalid_argument("rng: unknown algorithm '" + spec.algorithm +
                                "' (available: mt19937_64)");
  }
  return Engine(spec.seed + stream);
}

// Uniform double in [0, 1) built from the top 53 bits; std::generate_canonical
// is not bit-stable across standard libraries.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Engine& eng, double p) { return uniform01(eng) < p; }

}  // namespace adaptive

#endif  // ADAPTIVE_CORE_RNG_HPP_
