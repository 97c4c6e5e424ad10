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

// Two-level exponential weights: one low-level learner per radius R_i, mixed
// by a high-level softmax over the potentials
//   A_i = sum_{s<=t} <q^{R_i}(y_{1:s-1}), y_s> + sqrt(n R_i).
// The relaxation value is inf_lambda F(lambda) with
//   F(lambda) = (1/lambda) log sum_i exp(-lambda A_i) + 2 lambda (n - t).

#ifndef ADAPTIVE_ALGORITHMS_TWO_LEVEL_HPP_
#define ADAPTIVE_ALGORITHMS_TWO_LEVEL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "adaptive/algorithms/exponential_weights.hpp"
#include "adaptive/core/distribution.hpp"
#include "adaptive/core/ladder.hpp"

namespace adaptive {

enum class LambdaMode { optimized, fixed_inverse_sqrt_n };

inline std::string_view lambda_mode_name(LambdaMode m) {
  return m == LambdaMode::optimized ? "optimized" : "fixed_inverse_sqrt_n";
}

inline LambdaMode lambda_mode_from_name(std::string_view s) {
  if (s == "optimized") return LambdaMode::optimized;
  if (s == "fixed_inverse_sqrt_n" || s == "fixed") return LambdaMode::fixed_inverse_sqrt_n;
  throw std::invalid_argument("unknown lambda_mode '" + std::string(s) +
                              "' (known: optimized, fixed_inverse_sqrt_n)");
}

inline constexpr double kLambdaSearchLo = 1e-6;   // times 1/sqrt(n)
inline constexpr double kLambdaSearchHi = 1e3;    // times 1/sqrt(n)
inline constexpr int kLambdaScanPoints = 65;
inline constexpr double kLambdaSearchTolerance = 1e-10;

// F(lambda) for fixed potentials and remaining rounds.
inline double relaxation_objective(std::span<const double> potentials, double remaining,
                                   double lambda) {
  std::vector<double> z(potentials.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = -lambda * potentials[i];
  return log_sum_exp(z) / lambda + 2.0 * lambda * remaining;
}

struct LambdaChoice {
  double lambda = 0.0;
  double value = 0.0;
};

// Minimizes F over log lambda in [log(1e-6/sqrt n), log(1e3/sqrt n)]: a coarse
// scan locates the basin, golden-section search refines it, and 1/sqrt(n) is
// always a candidate so the result never exceeds the fixed-lambda value.
inline LambdaChoice minimize_relaxation(std::span<const double> potentials, double remaining,
                                        int horizon) {
  const double base = 1.0 / std::sqrt(static_cast<double>(horizon));
  const double lo = std::log(kLambdaSearchLo * base);
  const double hi = std::log(kLambdaSearchHi * base);
  auto f = [&](double log_lambda) {
    return relaxation_objective(potentials, remaining, std::exp(log_lambda));
  };
  LambdaChoice best{base, relaxation_objective(potentials, remaining, base)};
  auto consider = [&](double log_lambda, double v) {
    if (v < best.value) best = {std::exp(log_lambda), v};
  };

  const double step = (hi - lo) / (kLambdaScanPoints - 1);
  int arg = 0;
  double arg_value = kInf;
  for (int j = 0; j < kLambdaScanPoints; ++j) {
    const double x = lo + step * j;
    const double v = f(x);
    consider(x, v);
    if (v < arg_value) {
      arg_value = v;
      arg = j;
    }
  }
  double a = lo + step * std::max(0, arg - 1);
  double b = lo + step * std::min(kLambdaScanPoints - 1, arg + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  // Tolerance in log lambda equals relative tolerance in lambda.
  while (b - a > kLambdaSearchTolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  consider(c, fc);
  consider(d, fd);
  return best;
}

class TwoLevelEW {
 public:
  TwoLevelEW(Distribution prior, RadiusLadder ladder, int horizon,
             LambdaMode mode = LambdaMode::optimized)
      : prior_(std::move(prior)),
        ladder_(ladder),
        horizon_(horizon),
        mode_(mode),
        cumulative_(prior_.size(), 0.0),
        realized_(ladder_.size()),
        realized_sum_(ladder_.size(), 0.0) {
    if (horizon_ < 1) throw std::invalid_argument("two-level: horizon must be >= 1");
    if (prior_.size() < 1) throw std::invalid_argument("two-level: prior must be non-empty");
    for (auto& r : realized_) r.reserve(static_cast<std::size_t>(horizon_));
  }

  // Rebuilds the state from (prior, ladder, y_{1:t}) alone.
  static TwoLevelEW replay(Distribution prior, RadiusLadder ladder, int horizon, LambdaMode mode,
                           std::span<const std::vector<double>> losses) {
    TwoLevelEW s(std::move(prior), ladder, horizon, mode);
    for (const auto& y : losses) s.observe(y);
    return s;
  }

  const Distribution& prior() const { return prior_; }
  const RadiusLadder& ladder() const { return ladder_; }
  int horizon() const { return horizon_; }
  LambdaMode mode() const { return mode_; }
  int rounds_played() const { return t_; }
  std::size_t num_experts() const { return prior_.size(); }
  const std::vector<double>& cumulative_losses() const { return cumulative_; }
  std::span<const double> rung_realized(int i) const { return realized_.at(static_cast<std::size_t>(i)); }

  // q^{R_i}(y_{1:t}) for the rounds observed so far.
  Distribution rung_prediction(int i) const {
    return lowlevel_ew(prior_, ladder_.radius(i), horizon_, std::span<const double>(cumulative_));
  }

  std::vector<double> potentials() const {
    std::vector<double> a(realized_sum_.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = realized_sum_[i] + std::sqrt(horizon_ * ladder_.radius(static_cast<int>(i)));
    }
    return a;
  }

  // lambda at the current prefix: the relaxation minimizer, or 1/sqrt(n).
  LambdaChoice lambda_choice() const {
    if (!cache_) {
      const auto a = potentials();
      const double remaining = static_cast<double>(horizon_ - t_);
      if (mode_ == LambdaMode::fixed_inverse_sqrt_n) {
        const double lam = 1.0 / std::sqrt(static_cast<double>(horizon_));
        cache_ = LambdaChoice{lam, relaxation_objective(a, remaining, lam)};
      } else {
        cache_ = minimize_relaxation(a, remaining, horizon_);
      }
    }
    return *cache_;
  }

  // Rel_n(y_{1:t}) for the observed prefix.
  double relaxation_value() const { return lambda_choice().value; }

  // q*_{t+1}, using the lambda that attains the current relaxation value.
  Distribution highlevel_weights() const {
    const auto a = potentials();
    const double lam = lambda_choice().lambda;
    std::vector<double> z(a.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = -lam * a[i];
    return normalize_log_weights(z);
  }

  // Mixture sum_i (q*_{t+1})_i q^{R_i}(y_{1:t}).
  Distribution predict() const {
    const Distribution w = highlevel_weights();
    std::vector<Distribution> rungs;
    rungs.reserve(static_cast<std::size_t>(ladder_.size()));
    for (int i = 0; i < ladder_.size(); ++i) rungs.push_back(rung_prediction(i));
    return mix(w, rungs);
  }

  void observe(std::span<const double> y) {
    if (t_ >= horizon_) throw std::out_of_range("two-level: horizon exhausted");
    if (y.size() != prior_.size()) throw std::invalid_argument("two-level: loss dimension != K");
    for (double v : y) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("two-level: losses must lie in [0, 1]");
    }
    for (int i = 0; i < ladder_.size(); ++i) {
      const double l = rung_prediction(i).dot(y);
      realized_[static_cast<std::size_t>(i)].push_back(l);
      realized_sum_[static_cast<std::size_t>(i)] += l;
    }
    for (std::size_t k = 0; k < y.size(); ++k) cumulative_[k] += y[k];
    ++t_;
    cache_.reset();
  }

 private:
  Distribution prior_;
  RadiusLadder ladder_;
  int horizon_;
  LambdaMode mode_;
  int t_ = 0;
  std::vector<double> cumulative_;
  std::vector<std::vector<double>> realized_;
  std::vector<double> realized_sum_;
  mutable std::optional<LambdaChoice> cache_;
};

}  // namespace adaptive

#endif  // ADAPTIVE_ALGORITHMS_TWO_LEVEL_HPP_
