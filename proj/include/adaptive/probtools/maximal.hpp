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


#ifndef ADAPTIVE_PROBTOOLS_MAXIMAL_HPP_
#define ADAPTIVE_PROBTOOLS_MAXIMAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adaptive/core/distribution.hpp"
#include "adaptive/core/rng.hpp"

namespace adaptive {

// Tail condition P(X_i - B_i > tau) <= C1 exp(-tau^2 / (2 sigma_i^2)) + C2 exp(-tau s_i)
// for indices i = 1..N, with anchors sigma_bar <= sigma_1 and s_bar >= s_1.
struct TailSpec {
  double c1 = 0.0;
  double c2 = 0.0;
  std::vector<double> b;
  std::vector<double> sigma;
  std::vector<double> s;
  double sigma_bar = 0.0;
  double s_bar = 0.0;

  std::size_t size() const { return b.size(); }

  void validate() const {
    if (!(c1 >= 0.0) || !(c2 >= 0.0)) throw std::invalid_argument("tail spec: C1, C2 must be >= 0");
    if (b.empty()) throw std::invalid_argument("tail spec: needs at least one index");
    if (sigma.size() != b.size() || s.size() != b.size()) {
      throw std::invalid_argument("tail spec: B, sigma and s must have equal length");
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!(b[i] > 0.0)) throw std::invalid_argument("tail spec: every B_i must be > 0");
      if (!(sigma[i] >= 0.0) || !(s[i] >= 0.0)) {
        throw std::invalid_argument("tail spec: sigma_i and s_i must be >= 0");
      }
    }
    if (!(sigma_bar >= 0.0) || sigma_bar > sigma[0]) {
      throw std::invalid_argument("tail spec: need 0 <= sigma_bar <= sigma_1");
    }
    if (!(s_bar >= s[0])) throw std::invalid_argument("tail spec: need s_bar >= s_1");
  }
};

// theta_i = max{(sigma_i / B_i) sqrt(2 log(sigma_i / sigma_bar) + 4 log i),
//               (B_i s_i)^-1 log(i^2 s_bar / s_i)} + 1.
// A branch is dropped when its tail term vanishes (C1 = 0 or sigma_i = 0, and
// C2 = 0 or s_i = 0), and each branch is floored at 0.
inline std::vector<double> theta_multipliers(const TailSpec& spec) {
  spec.validate();
  std::vector<double> theta(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double i = static_cast<double>(k + 1);
    double branch = 0.0;
    if (spec.c1 > 0.0 && spec.sigma[k] > 0.0) {
      if (spec.sigma[k] < spec.sigma_bar || spec.sigma_bar <= 0.0) {
        throw std::invalid_argument("theta_multipliers: sigma_" + std::to_string(k + 1) +
                                    " below sigma_bar");
      }
      const double arg = 2.0 * std::log(spec.sigma[k] / spec.sigma_bar) + 4.0 * std::log(i);
      branch = std::max(branch, spec.sigma[k] / spec.b[k] * std::sqrt(std::max(0.0, arg)));
    }
    if (spec.c2 > 0.0 && spec.s[k] > 0.0) {
      branch = std::max(branch, std::log(i * i * spec.s_bar / spec.s[k]) / (spec.b[k] * spec.s[k]));
    }
    theta[k] = branch + 1.0;
  }
  return theta;
}

// 3 C1 sigma_bar + 2 C2 / s_bar.
inline double maximal_bound(const TailSpec& spec) {
  if (spec.c2 > 0.0 && !(spec.s_bar > 0.0)) {
    throw std::invalid_argument("maximal_bound: C2 > 0 needs s_bar > 0");
  }
  return 3.0 * spec.c1 * spec.sigma_bar + (spec.c2 > 0.0 ? 2.0 * spec.c2 / spec.s_bar : 0.0);
}

// Synthetic families whose tails satisfy the condition above:
//   gaussian     X_i = B_i + sigma_i |Z|   (needs C1 >= 1, since P(|Z| > x) <= exp(-x^2/2))
//   exponential  X_i = B_i + Exp(s_i)      (needs C2 >= 1)
enum class TailGenerator { gaussian, exponential };

inline TailGenerator tail_generator_from_name(std::string_view name) {
  if (name == "gaussian") return TailGenerator::gaussian;
  if (name == "exponential") return TailGenerator::exponential;
  throw std::invalid_argument("unknown generator '" + std::string(name) +
                              "' (known: gaussian, exponential)");
}

inline std::string_view tail_generator_name(TailGenerator g) {
  return g == TailGenerator::gaussian ? "gaussian" : "exponential";
}

// Standard normal via Box-Muller on the portable uniform01 stream.
inline double standard_normal(Engine& eng) {
  const double u1 = 1.0 - uniform01(eng);  // (0, 1]
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

struct MaximalReport {
  TailGenerator generator = TailGenerator::gaussian;
  std::size_t replicates = 0;
  double estimate = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  std::vector<double> theta;
  bool pass = false;
};

// Monte Carlo estimate of E max_i {X_i - B_i theta_i}; passes when it does not
// exceed the bound by more than 4 standard errors.
inline MaximalReport maximal_inequality_mc(const TailSpec& spec, TailGenerator gen,
                                           std::size_t replicates, const RngSpec& rng) {
  if (replicates < 2) throw std::invalid_argument("maximal_inequality_mc: needs >= 2 replicates");
  if (gen == TailGenerator::gaussian && spec.c1 < 1.0) {
    throw std::invalid_argument("gaussian generator needs C1 >= 1 for its tail condition");
  }
  if (gen == TailGenerator::exponential) {
    if (spec.c2 < 1.0) throw std::invalid_argument("exponential generator needs C2 >= 1");
    for (double si : spec.s) {
      if (!(si > 0.0)) throw std::invalid_argument("exponential generator needs every s_i > 0");
    }
  }
  MaximalReport r;
  r.generator = gen;
  r.replicates = replicates;
  r.theta = theta_multipliers(spec);
  r.bound = maximal_bound(spec);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    Engine eng = make_engine(rng, rep);
    double best = kNegInf;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const double noise = gen == TailGenerator::gaussian
                               ? spec.sigma[i] * std::abs(standard_normal(eng))
                               : -std::log(1.0 - uniform01(eng)) / spec.s[i];
      best = std::max(best, noise - spec.b[i] * (r.theta[i] - 1.0));
    }
    const double delta = best - mean;
    mean += delta / static_cast<double>(rep + 1);
    m2 += delta * (best - mean);
  }
  r.estimate = mean;
  r.std_error = std::sqrt(m2 / static_cast<double>(replicates - 1) / static_cast<double>(replicates));
  r.pass = r.estimate <= r.bound + 4.0 * r.std_error;
  return r;
}

}  // namespace adaptive

#endif  // ADAPTIVE_PROBTOOLS_MAXIMAL_HPP_
