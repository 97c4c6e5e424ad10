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

#ifndef ADAPTIVE_ALGORITHMS_EXPONENTIAL_WEIGHTS_HPP_
#define ADAPTIVE_ALGORITHMS_EXPONENTIAL_WEIGHTS_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "adaptive/core/distribution.hpp"

namespace adaptive {

// q^R(y_{1:t}) proportional to pi_k exp(-sqrt(R/n) L_k), L the cumulative loss.
inline Distribution lowlevel_ew(const Distribution& prior, double radius, int horizon,
                                std::span<const double> cumulative_loss) {
  if (!(radius >= 0.0)) throw std::invalid_argument("lowlevel_ew: radius must be >= 0");
  if (horizon < 1) throw std::invalid_argument("lowlevel_ew: horizon must be >= 1");
  if (cumulative_loss.size() != prior.size()) {
    throw std::invalid_argument("lowlevel_ew: loss dimension != number of experts");
  }
  const double eta = std::sqrt(radius / horizon);
  // A tilt that is constant on the support leaves the prior unchanged.
  bool flat = true;
  double first = 0.0;
  bool seen = false;
  for (std::size_t k = 0; k < prior.size() && flat; ++k) {
    if (prior[k] <= 0.0) continue;
    const double v = eta * cumulative_loss[k];
    if (!seen) first = v, seen = true;
    flat = v == first;
  }
  if (flat) return prior;
  std::vector<double> logw(prior.size());
  for (std::size_t k = 0; k < logw.size(); ++k) {
    logw[k] = prior[k] > 0.0 ? std::log(prior[k]) - eta * cumulative_loss[k] : kNegInf;
  }
  return normalize_log_weights(logw);
}

inline Distribution lowlevel_ew(const Distribution& prior, double radius, int horizon,
                                std::span<const std::vector<double>> losses) {
  std::vector<double> total(prior.size(), 0.0);
  for (const auto& y : losses) {
    if (y.size() != prior.size()) throw std::invalid_argument("lowlevel_ew: loss dimension != number of experts");
    for (std::size_t k = 0; k < y.size(); ++k) total[k] += y[k];
  }
  return lowlevel_ew(prior, radius, horizon, std::span<const double>(total));
}

}  // namespace adaptive

#endif  // ADAPTIVE_ALGORITHMS_EXPONENTIAL_WEIGHTS_HPP_
