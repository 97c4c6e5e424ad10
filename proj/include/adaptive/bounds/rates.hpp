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

// Closed-form adaptive regret bounds. All logarithms are natural.

#ifndef ADAPTIVE_BOUNDS_RATES_HPP_
#define ADAPTIVE_BOUNDS_RATES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adaptive/complexity/covering.hpp"
#include "adaptive/complexity/rademacher.hpp"
#include "adaptive/core/distribution.hpp"

namespace adaptive {

inline constexpr double kPowerIterationTolerance = 1e-12;
inline constexpr int kPowerIterationMaxSteps = 100000;

// Largest eigenvalue of a symmetric PSD matrix (row-major, d x d) by power
// iteration with a Rayleigh-quotient stopping rule. The normalized all-ones
// start is followed by restarts from each basis vector, since the all-ones
// vector can be orthogonal to the top eigenvector.
inline double top_eigenvalue_psd(std::span<const double> a, std::size_t d) {
  if (a.size() != d * d) throw std::invalid_argument("top_eigenvalue: matrix must be d x d");
  auto run = [&](std::vector<double> v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    std::vector<double> w(d);
    double rayleigh = 0.0;
    for (int step = 0; step < kPowerIterationMaxSteps; ++step) {
      for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += a[i * d + j] * v[j];
        w[i] = s;
      }
      double next = 0.0, wn = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        next += v[i] * w[i];
        wn += w[i] * w[i];
      }
      wn = std::sqrt(wn);
      if (wn == 0.0) return 0.0;
      for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / wn;
      const bool converged = std::abs(next - rayleigh) <= kPowerIterationTolerance * std::abs(next);
      rayleigh = next;
      if (converged && step > 0) break;
    }
    return rayleigh;
  };
  double best = run(std::vector<double>(d, 1.0));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> e(d, 0.0);
    e[j] = 1.0;
    best = std::max(best, run(std::move(e)));
  }
  return std::max(best, 0.0);
}

// 16 sqrt(d) log n (sqrt(lambda_max(sum_t y_t y_t^T)) + 1).
inline double spectral_rate(std::span<const std::vector<double>> ys, std::size_t d) {
  const std::size_t n = ys.size();
  if (n < 2) throw std::invalid_argument("spectral_rate: needs n >= 2");
  std::vector<double> gram(d * d, 0.0);
  for (const auto& y : ys) {
    if (y.size() != d) throw std::invalid_argument("spectral_rate: outcome dimension != d");
    double sq = 0.0;
    for (double v : y) sq += v * v;
    if (std::sqrt(sq) > 1.0 + 1e-9) throw std::domain_error("spectral_rate: outcome outside unit ball");
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) gram[i * d + j] += y[i] * y[j];
    }
  }
  const double lambda = top_eigenvalue_psd(gram, d);
  return 16.0 * std::sqrt(static_cast<double>(d)) * std::log(static_cast<double>(n)) *
         (std::sqrt(lambda) + 1.0);
}

inline constexpr double kPredictableK1 = 4.0 * std::numbers::sqrt2;
inline constexpr double kPredictableK2 = 24.0 * std::numbers::sqrt2;

// Bracketed expression of the predictable-sequence bound at one scale gamma.
inline double predictable_rate_at(double gamma, double sq_dev, const CoveringProfile& profile,
                                  int n) {
  const double logn = std::log(static_cast<double>(n));
  const double log_cover = std::max(0.0, profile.log_covering(gamma / 2.0));
  return kPredictableK1 * std::sqrt(logn * log_cover * (sq_dev + 1.0)) +
         kPredictableK2 * logn * dudley_integral(profile, gamma, n) + 2.0 * logn + 7.0;
}

// Minimum over the dyadic grid {2^j / n} of the predictable-sequence bound.
// The grid minimum is never below the infimum over all gamma.
inline double predictable_rate(std::span<const double> f_values, std::span<const double> predicted,
                               const CoveringProfile& profile, int n) {
  if (n < 1) throw std::invalid_argument("predictable_rate: n must be >= 1");
  if (f_values.size() != predicted.size() || f_values.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("predictable_rate: f values and predictions need length n");
  }
  if (profile.mode() == CoveringProfile::Mode::analytic_power_law && profile.exponent() >= 2.0) {
    throw std::invalid_argument("predictable_rate: covering exponent p must be < 2");
  }
  double sq_dev = 0.0;
  for (std::size_t t = 0; t < f_values.size(); ++t) {
    const double d = f_values[t] - predicted[t];
    sq_dev += d * d;
  }
  double best = kInf;
  for (double gamma : dyadic_gamma_grid(n)) {
    best = std::min(best, predictable_rate_at(gamma, sq_dev, profile, n));
  }
  return best;
}

// 4 log(log N sum (f - f*)^2 + e) sqrt(32 (log N sum (f - f*)^2 + e)) + 2.
inline double fixed_vs_best_rate(std::span<const double> f_values,
                                 std::span<const double> fstar_values, std::size_t class_size) {
  if (class_size < 2) throw std::invalid_argument("fixed_vs_best_rate: class size N must be >= 2");
  if (f_values.size() != fstar_values.size()) {
    throw std::invalid_argument("fixed_vs_best_rate: sequences differ in length");
  }
  double sq = 0.0;
  for (std::size_t t = 0; t < f_values.size(); ++t) {
    const double d = f_values[t] - fstar_values[t];
    sq += d * d;
  }
  const double a = std::log(static_cast<double>(class_size)) * sq + std::numbers::e;
  return 4.0 * std::log(a) * std::sqrt(32.0 * a) + 2.0;
}

// sum_t E_{i ~ f} (y_t)_i^2
inline double second_moment(const Distribution& f, std::span<const std::vector<double>> ys) {
  double s = 0.0;
  for (const auto& y : ys) {
    if (y.size() != f.size()) throw std::invalid_argument("pacbayes_rate: loss dimension != K");
    for (std::size_t i = 0; i < y.size(); ++i) s += f[i] * y[i] * y[i];
  }
  return s;
}

// sqrt(50 (KL + log n) V) + 50 (KL + log n) + 10 with V the second moment above.
inline double pacbayes_rate(const Distribution& f, const Distribution& pi,
                            std::span<const std::vector<double>> ys) {
  if (ys.size() < 2) throw std::invalid_argument("pacbayes_rate: needs n >= 2");
  const double kl = kl_divergence(f, pi);
  if (kl == kInf) return kInf;
  const double c = 50.0 * (kl + std::log(static_cast<double>(ys.size())));
  return std::sqrt(c * second_moment(f, ys)) + c + 10.0;
}

// 3 sqrt(2 n max(KL, 1)) + c sqrt(n); the published bound uses c = 4.
inline double kl_radius_rate(const Distribution& f, const Distribution& pi, int n,
                             double sqrt_n_coef = 4.0) {
  if (n < 1) throw std::invalid_argument("kl_radius_rate: n must be >= 1");
  const double kl = kl_divergence(f, pi);
  if (kl == kInf) return kInf;
  const double sn = std::sqrt(static_cast<double>(n));
  return 3.0 * std::sqrt(2.0 * n * std::max(kl, 1.0)) + sqrt_n_coef * sn;
}

// D sqrt(n) (8 |f| (1 + sqrt(log 2|f| + log log 2|f|)) + 12), for |f| >= 1.
inline double norm_adaptive_rate(double norm_f, double smoothness, int n) {
  if (!(norm_f >= 1.0)) throw std::domain_error("norm_adaptive_rate: norm below adaptive range");
  if (n < 1) throw std::invalid_argument("norm_adaptive_rate: n must be >= 1");
  const double l = std::log(2.0 * norm_f);
  return smoothness * std::sqrt(static_cast<double>(n)) *
         (8.0 * norm_f * (1.0 + std::sqrt(l + std::log(l))) + 12.0);
}

// Rad_n(F(R)) per ladder rung, ascending in R.
using RadTable = std::vector<std::pair<double, double>>;

inline double rad_lookup(const RadTable& table, double radius) {
  for (const auto& [r, rad] : table) {
    if (r >= radius * (1 - 1e-12)) return rad;
  }
  throw std::out_of_range("generic_radius_rate: Rademacher table has no rung >= " +
                          std::to_string(radius));
}

inline constexpr double kGenericK1 = 64.0;
inline constexpr double kGenericK2 = 16.0;

// K1 Rad(F(2R)) log^{3/2} n (1 + sqrt(log(Rad(F(2R)) / Rad(F(1))) + log log 2R))
//   + K2 Gamma Rad(F(1)) log^{3/2} n.
// The square-root argument is clamped at 0 (it is negative when 2R < e).
inline double generic_radius_rate(double radius, const RadTable& table, double k1, double k2,
                                  double gamma, int n) {
  if (table.empty()) throw std::invalid_argument("generic_radius_rate: empty Rademacher table");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table[i].second > 0.0)) throw std::invalid_argument("generic_radius_rate: Rad values must be > 0");
    if (i && (table[i].first <= table[i - 1].first || table[i].second < table[i - 1].second)) {
      throw std::invalid_argument("generic_radius_rate: table must be increasing in R and nondecreasing in Rad");
    }
  }
  if (std::abs(table.front().first - 1.0) > 1e-12) {
    throw std::invalid_argument("generic_radius_rate: table must start at R = 1");
  }
  const double rad1 = table.front().second;
  const double rad2r = rad_lookup(table, 2.0 * radius);
  const double log32 = std::pow(std::log(static_cast<double>(n)), 1.5);
  const double l2r = std::log(2.0 * radius);
  const double loglog = l2r > 0.0 ? std::log(l2r) : kNegInf;
  const double arg = std::max(0.0, std::log(rad2r / rad1) + loglog);
  return k1 * rad2r * log32 * (1.0 + std::sqrt(arg)) + k2 * gamma * rad1 * log32;
}

}  // namespace adaptive

#endif  // ADAPTIVE_BOUNDS_RATES_HPP_
