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

#ifndef ADAPTIVE_CORE_DISTRIBUTION_HPP_
#define ADAPTIVE_CORE_DISTRIBUTION_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adaptive {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance accepted when constructing a distribution from user weights. The
// stored weights are renormalized, so they always sum to one within 1e-12.
inline constexpr double kDistributionInputTolerance = 1e-9;

// Probability vector over a finite set (experts, decisions or ladder rungs).
class Distribution {
 public:
  Distribution() = default;

  explicit Distribution(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("distribution: empty support");
    double total = 0.0;
    for (double w : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("distribution: weights must be finite and >= 0");
      }
      total += w;
    }
    if (std::abs(total - 1.0) > kDistributionInputTolerance) {
      throw std::invalid_argument("distribution: weights sum to " + std::to_string(total) +
                                  ", expected 1");
    }
    for (double& w : weights_) w /= total;
  }

  static Distribution uniform(std::size_t k) {
    if (k == 0) throw std::invalid_argument("distribution: empty support");
    return Distribution(std::vector<double>(k, 1.0 / static_cast<double>(k)), Trusted{});
  }

  static Distribution point_mass(std::size_t k, std::size_t index) {
    if (index >= k) throw std::out_of_range("distribution: point mass index out of range");
    std::vector<double> w(k, 0.0);
    w[index] = 1.0;
    return Distribution(std::move(w), Trusted{});
  }

  // Normalizes arbitrary nonnegative mass; at least one entry must be positive.
  static Distribution from_mass(std::vector<double> mass) {
    double total = 0.0;
    for (double m : mass) {
      if (!(m >= 0.0) || !std::isfinite(m)) {
        throw std::invalid_argument("distribution: mass must be finite and >= 0");
      }
      total += m;
    }
    if (!(total > 0.0)) throw std::invalid_argument("distribution: empty support");
    for (double& m : mass) m /= total;
    return Distribution(std::move(mass), Trusted{});
  }

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  double dot(std::span<const double> v) const {
    if (v.size() != weights_.size()) {
      throw std::invalid_argument("distribution: dimension mismatch in dot product");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += weights_[i] * v[i];
    return s;
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  struct Trusted {};
  Distribution(std::vector<double> w, Trusted) : weights_(std::move(w)) {}

  std::vector<double> weights_;
};

// Max-shifted softmax. Entries may be -infinity (zero mass) but not all of them.
inline Distribution normalize_log_weights(std::span<const double> log_weights) {
  if (log_weights.empty()) throw std::invalid_argument("normalize_log_weights: empty input");
  double max_log = kNegInf;
  for (double v : log_weights) {
    if (std::isnan(v) || v == kInf) {
      throw std::invalid_argument("normalize_log_weights: entries must be finite or -inf");
    }
    max_log = std::max(max_log, v);
  }
  if (max_log == kNegInf) throw std::invalid_argument("normalize_log_weights: empty support");
  std::vector<double> mass(log_weights.size());
  for (std::size_t i = 0; i < mass.size(); ++i) mass[i] = std::exp(log_weights[i] - max_log);
  return Distribution::from_mass(std::move(mass));
}

// log(sum_i exp(v_i)) with the usual max shift; -inf for an all -inf input.
inline double log_sum_exp(std::span<const double> v) {
  double max_v = kNegInf;
  for (double x : v) max_v = std::max(max_v, x);
  if (max_v == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - max_v);
  return max_v + std::log(s);
}

// KL(f | pi) in nats, with 0 log 0 = 0 and +inf when f leaves pi's support.
inline double kl_divergence(const Distribution& f, const Distribution& pi) {
  if (f.size() != pi.size()) throw std::invalid_argument("kl_divergence: support size mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] <= 0.0) continue;
    if (pi[i] <= 0.0) return kInf;
    kl += f[i] * std::log(f[i] / pi[i]);
  }
  // Rounding can leave a tiny negative value when f == pi.
  return std::max(kl, 0.0);
}

// Mixture sum_i coef_i * dists[i]; all components share one support.
inline Distribution mix(const Distribution& coef, std::span<const Distribution> dists) {
  if (coef.size() != dists.size()) throw std::invalid_argument("mix: component count mismatch");
  const std::size_t k = dists.front().size();
  std::vector<double> out(k, 0.0);
  for (std::size_t i = 0; i < dists.size(); ++i) {
    if (dists[i].size() != k) throw std::invalid_argument("mix: support size mismatch");
    for (std::size_t j = 0; j < k; ++j) out[j] += coef[i] * dists[i][j];
  }
  return Distribution::from_mass(std::move(out));
}

}  // namespace adaptive

#endif  // ADAPTIVE_CORE_DISTRIBUTION_HPP_
