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


// inf_f {sum_t loss(f, y_t) + B_n(f; y_{1:n})} over a game's comparator grid,
// optionally refined by KL-ball minimizers for KL-type rates.

#ifndef ADAPTIVE_ORACLE_COMPARATOR_HPP_
#define ADAPTIVE_ORACLE_COMPARATOR_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptive/algorithms/kl_ball.hpp"
#include "adaptive/bounds/adaptive_rate.hpp"
#include "adaptive/core/game.hpp"

namespace adaptive {

inline constexpr int kKlRefinementPoints = 48;

// Radii tried by the refinement: 0, a geometric grid up to log(1/pi_min),
// and the powers of two below that.
inline std::vector<double> kl_refinement_radii(const Distribution& prior) {
  double pmin = 1.0;
  for (double p : prior.weights()) {
    if (p > 0.0) pmin = std::min(pmin, p);
  }
  const double top = std::max(1e-4, -std::log(pmin));
  std::vector<double> r{0.0};
  for (int j = 0; j < kKlRefinementPoints; ++j) {
    r.push_back(1e-4 * std::pow(top / 1e-4, static_cast<double>(j) / (kKlRefinementPoints - 1)));
  }
  for (double p = 1.0; p < top; p *= 2.0) r.push_back(p);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

struct ComparatorInfimum {
  double value = kInf;
  std::string label;
  bool refined = false;  // attained by a KL-ball minimizer rather than a grid point
};

// Evaluates sum_t loss(c, y_t) + B_n(c; y_{1:n}) for any mixture comparator.
inline double comparator_objective(const GameSpec& game, const AdaptiveRate& rate,
                                   const Comparator& c, std::span<const std::size_t> seq,
                                   std::span<const std::vector<double>> ys) {
  std::vector<double> per_round(seq.size());
  double total = 0.0;
  for (std::size_t t = 0; t < seq.size(); ++t) {
    per_round[t] = expected_loss(c.mix, seq[t], game);
    total += per_round[t];
  }
  const RateInput in{c, ys, per_round};
  return total + rate.evaluate(in, game.prior());
}

inline ComparatorInfimum comparator_infimum(const GameSpec& game, const AdaptiveRate& rate,
                                            std::span<const std::size_t> seq, bool refine) {
  std::vector<std::vector<double>> ys;
  ys.reserve(seq.size());
  for (std::size_t y : seq) ys.emplace_back(game.outcome(y).begin(), game.outcome(y).end());
  ComparatorInfimum best;
  std::vector<double> per_round(seq.size());
  for (std::size_t c = 0; c < game.num_comparators(); ++c) {
    double total = 0.0;
    for (std::size_t t = 0; t < seq.size(); ++t) {
      per_round[t] = game.comparator_loss(c, seq[t]);
      total += per_round[t];
    }
    const RateInput in{game.comparator(c), ys, per_round};
    const double v = total + rate.evaluate(in, game.prior());
    if (v < best.value) best = {v, game.comparator(c).label, false};
  }
  if (refine && rate.kl_type()) {
    const Distribution& prior = rate.params().prior ? *rate.params().prior : game.prior();
    std::vector<double> cumulative(game.num_decisions(), 0.0);
    for (std::size_t y : seq) {
      for (std::size_t d = 0; d < cumulative.size(); ++d) cumulative[d] += game.loss(d, y);
    }
    for (double r : kl_refinement_radii(prior)) {
      const auto sol = kl_ball_minimizer(prior, r, cumulative);
      const Comparator c{"kl_ball:" + std::to_string(r), sol.minimizer, {}};
      Comparator full = c;
      full.point.assign(c.mix.weights().begin(), c.mix.weights().end());
      const double v = comparator_objective(game, rate, full, seq, ys);
      if (v < best.value) best = {v, full.label, true};
    }
  }
  if (!(best.value < kInf)) throw std::runtime_error("comparator infimum: every comparator has an infinite penalty");
  return best;
}

}  // namespace adaptive

#endif  // ADAPTIVE_ORACLE_COMPARATOR_HPP_
