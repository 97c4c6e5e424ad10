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

#ifndef ADAPTIVE_ALGORITHMS_KL_BALL_HPP_
#define ADAPTIVE_ALGORITHMS_KL_BALL_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "adaptive/algorithms/exponential_weights.hpp"
#include "adaptive/core/distribution.hpp"

namespace adaptive {

inline constexpr double kKlBallTolerance = 1e-10;
inline constexpr double kKlBallMaxTilt = 1e6;

struct KlBallSolution {
  Distribution minimizer;
  double value = 0.0;  // <L, minimizer>
  double tilt = 0.0;   // eta; +inf for the argmin-set limit
};

namespace detail {

inline Distribution tilted(const Distribution& prior, std::span<const double> loss, double eta) {
  std::vector<double> logw(prior.size());
  for (std::size_t k = 0; k < logw.size(); ++k) {
    logw[k] = prior[k] > 0.0 ? std::log(prior[k]) - eta * loss[k] : kNegInf;
  }
  return normalize_log_weights(logw);
}

}  // namespace detail

// Minimizes <L, f> over the ball {f : KL(f | pi) <= R}. The minimizer is the
// exponential tilt pi * exp(-eta L) with KL equal to R, or the prior restricted
// to argmin L when that limit already lies inside the ball.
inline KlBallSolution kl_ball_minimizer(const Distribution& prior, double radius,
                                        std::span<const double> loss) {
  if (!(radius >= 0.0)) throw std::invalid_argument("kl_ball_minimizer: radius must be >= 0");
  if (loss.size() != prior.size()) throw std::invalid_argument("kl_ball_minimizer: dimension mismatch");
  for (double v : loss) {
    if (!std::isfinite(v)) throw std::invalid_argument("kl_ball_minimizer: loss must be finite");
  }
  auto solution = [&](Distribution f, double eta) {
    const double v = f.dot(loss);
    return KlBallSolution{std::move(f), v, eta};
  };
  if (radius == 0.0) return solution(prior, 0.0);

  double lmin = kInf;
  for (std::size_t k = 0; k < prior.size(); ++k) {
    if (prior[k] > 0.0) lmin = std::min(lmin, loss[k]);
  }
  std::vector<double> limit(prior.size(), 0.0);
  for (std::size_t k = 0; k < prior.size(); ++k) {
    if (prior[k] > 0.0 && loss[k] == lmin) limit[k] = prior[k];
  }
  Distribution f_limit = Distribution::from_mass(limit);
  if (kl_divergence(f_limit, prior) <= radius) return solution(std::move(f_limit), kInf);

  // KL of the tilt increases with eta; bracket, then bisect.
  auto kl_at = [&](double eta) { return kl_divergence(detail::tilted(prior, loss, eta), prior); };
  double lo = 0.0, hi = 1.0;
  while (kl_at(hi) < radius) {
    lo = hi;
    hi *= 2.0;
    if (hi > kKlBallMaxTilt) {
      hi = kKlBallMaxTilt;
      if (kl_at(hi) <= radius) return solution(detail::tilted(prior, loss, hi), hi);
      break;
    }
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double kl = kl_at(mid);
    if (std::abs(kl - radius) <= kKlBallTolerance) {
      return solution(detail::tilted(prior, loss, mid), mid);
    }
    if (kl < radius) lo = mid; else hi = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  // lo always satisfies KL <= R.
  return solution(detail::tilted(prior, loss, lo), lo);
}

struct FixedRadiusReport {
  double lhs = 0.0;     // -inf_{KL(f|pi) <= R} sum_t <y_t, f>
  double rhs = 0.0;     // -sum_t <y_t, q^R(y_{1:t-1})> + 2 sqrt(R n)
  double margin = 0.0;  // rhs - lhs
  bool violated = false;
};

inline constexpr double kFixedRadiusViolation = -1e-8;

// Checks the single-radius exponential-weights inequality on one sequence.
inline FixedRadiusReport fixed_r_inequality_check(const Distribution& prior, double radius,
                                                  int horizon,
                                                  std::span<const std::vector<double>> losses) {
  if (losses.size() != static_cast<std::size_t>(horizon)) {
    throw std::invalid_argument("fixed_r_inequality_check: sequence length != horizon");
  }
  std::vector<double> cumulative(prior.size(), 0.0);
  double learner = 0.0;
  for (const auto& y : losses) {
    if (y.size() != prior.size()) throw std::invalid_argument("fixed_r_inequality_check: dimension mismatch");
    learner += lowlevel_ew(prior, radius, horizon, std::span<const double>(cumulative)).dot(y);
    for (std::size_t k = 0; k < y.size(); ++k) cumulative[k] += y[k];
  }
  FixedRadiusReport r;
  r.lhs = -kl_ball_minimizer(prior, radius, cumulative).value;
  r.rhs = -learner + 2.0 * std::sqrt(radius * horizon);
  r.margin = r.rhs - r.lhs;
  r.violated = r.margin < kFixedRadiusViolation;
  return r;
}

}  // namespace adaptive

#endif  // ADAPTIVE_ALGORITHMS_KL_BALL_HPP_
