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

#ifndef ADAPTIVE_CORE_GAME_HPP_
#define ADAPTIVE_CORE_GAME_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adaptive/core/distribution.hpp"

namespace adaptive {

struct LossRange {
  double lo = 0.0;
  double hi = 1.0;
};

// A comparator is a mixture over the game's decisions. `point` carries the
// comparator's coordinates for rates that need a norm or radius; for experts
// games it equals the mixture weights.
struct Comparator {
  std::string label;
  Distribution mix;
  std::vector<double> point;
};

// Finite online game. Inputs x_t are the singleton {0}, so rates see only the
// comparator and the outcome sequence.
class GameSpec {
 public:
  GameSpec(std::vector<std::string> decisions, std::vector<std::vector<double>> outcomes,
           std::vector<std::vector<double>> loss, LossRange range,
           std::vector<Comparator> comparators, int horizon,
           std::optional<Distribution> prior = std::nullopt)
      : decisions_(std::move(decisions)),
        outcomes_(std::move(outcomes)),
        range_(range),
        comparators_(std::move(comparators)),
        horizon_(horizon) {
    const std::size_t nd = decisions_.size();
    const std::size_t ny = outcomes_.size();
    if (nd == 0) throw std::invalid_argument("game: decision set is empty");
    if (ny == 0) throw std::invalid_argument("game: outcome set is empty");
    if (horizon_ < 1) throw std::invalid_argument("game: horizon must be >= 1");
    if (comparators_.empty()) throw std::invalid_argument("game: comparator grid is empty");
    if (!(range_.lo < range_.hi)) throw std::invalid_argument("game: empty loss range");
    if (loss.size() != nd) throw std::invalid_argument("game: loss matrix needs one row per decision");
    loss_.reserve(nd * ny);
    for (const auto& row : loss) {
      if (row.size() != ny) throw std::invalid_argument("game: loss row length != outcome count");
      for (double v : row) {
        if (!std::isfinite(v) || v < range_.lo - 1e-12 || v > range_.hi + 1e-12) {
          throw std::invalid_argument("game: loss entry " + std::to_string(v) +
                                      " outside declared range");
        }
        loss_.push_back(v);
      }
    }
    for (auto& c : comparators_) {
      if (c.mix.size() != nd) {
        throw std::invalid_argument("game: comparator '" + c.label + "' has wrong support size");
      }
      if (c.point.empty()) c.point.assign(c.mix.weights().begin(), c.mix.weights().end());
    }
    prior_ = prior ? std::move(*prior) : Distribution::uniform(nd);
    if (prior_.size() != nd) throw std::invalid_argument("game: prior has wrong support size");
    comparator_loss_.resize(comparators_.size() * ny);
    for (std::size_t c = 0; c < comparators_.size(); ++c) {
      for (std::size_t y = 0; y < ny; ++y) {
        double s = 0.0;
        for (std::size_t d = 0; d < nd; ++d) s += comparators_[c].mix[d] * this->loss(d, y);
        comparator_loss_[c * ny + y] = s;
      }
    }
  }

  // Experts game with linear loss: decision k suffers outcome[k].
  static GameSpec linear_experts(std::size_t k, std::vector<std::vector<double>> outcomes,
                                 int horizon, std::vector<Comparator> comparators,
                                 std::optional<Distribution> prior = std::nullopt,
                                 LossRange range = {}) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back("e" + std::to_string(i));
    std::vector<std::vector<double>> loss(k, std::vector<double>(outcomes.size()));
    for (std::size_t y = 0; y < outcomes.size(); ++y) {
      if (outcomes[y].size() != k) throw std::invalid_argument("game: outcome dimension != K");
      for (std::size_t d = 0; d < k; ++d) loss[d][y] = outcomes[y][d];
    }
    return GameSpec(std::move(labels), std::move(outcomes), std::move(loss), range,
                    std::move(comparators), horizon, std::move(prior));
  }

  std::size_t num_decisions() const { return decisions_.size(); }
  std::size_t num_outcomes() const { return outcomes_.size(); }
  std::size_t num_comparators() const { return comparators_.size(); }
  int horizon() const { return horizon_; }
  LossRange loss_range() const { return range_; }
  const Distribution& prior() const { return prior_; }
  const std::vector<std::string>& decisions() const { return decisions_; }
  const Comparator& comparator(std::size_t c) const { return comparators_.at(c); }
  const std::vector<Comparator>& comparators() const { return comparators_; }

  std::span<const double> outcome(std::size_t y) const { return outcomes_.at(y); }
  const std::vector<std::vector<double>>& outcomes() const { return outcomes_; }

  double loss(std::size_t d, std::size_t y) const { return loss_[d * outcomes_.size() + y]; }

  // Loss column for outcome y, one entry per decision.
  std::vector<double> loss_column(std::size_t y) const {
    std::vector<double> col(decisions_.size());
    for (std::size_t d = 0; d < col.size(); ++d) col[d] = loss(d, y);
    return col;
  }

  double comparator_loss(std::size_t c, std::size_t y) const {
    return comparator_loss_[c * outcomes_.size() + y];
  }

 private:
  std::vector<std::string> decisions_;
  std::vector<std::vector<double>> outcomes_;
  std::vector<double> loss_;  // row-major decisions x outcomes
  LossRange range_;
  std::vector<Comparator> comparators_;
  std::vector<double> comparator_loss_;
  int horizon_;
  Distribution prior_;
};

// E_{d ~ q} loss(d, y).
inline double expected_loss(const Distribution& q, std::size_t y, const GameSpec& game) {
  if (y >= game.num_outcomes()) throw std::out_of_range("expected_loss: outcome index out of range");
  if (q.size() != game.num_decisions()) {
    throw std::invalid_argument("expected_loss: distribution support != decision count");
  }
  double s = 0.0;
  for (std::size_t d = 0; d < q.size(); ++d) s += q[d] * game.loss(d, y);
  return s;
}

// Played rounds of a game; all lists share one length.
struct History {
  std::vector<std::size_t> outcomes;
  std::vector<std::vector<double>> inputs;
  std::vector<Distribution> predictions;
  std::vector<double> realized_losses;

  std::size_t size() const { return outcomes.size(); }

  void push(std::size_t y, Distribution q, double loss) {
    outcomes.push_back(y);
    predictions.push_back(std::move(q));
    realized_losses.push_back(loss);
  }
};

// All 2^k vectors in {0,1}^k, ordered by their binary code (coordinate 0 is the
// low bit).
inline std::vector<std::vector<double>> binary_outcomes(std::size_t k) {
  if (k == 0 || k > 20) throw std::invalid_argument("binary_outcomes: need 1 <= K <= 20");
  std::vector<std::vector<double>> out;
  for (std::size_t code = 0; code < (std::size_t{1} << k); ++code) {
    std::vector<double> y(k);
    for (std::size_t j = 0; j < k; ++j) y[j] = static_cast<double>((code >> j) & 1U);
    out.push_back(std::move(y));
  }
  return out;
}

// Number of points of the simplex grid with coordinates in {0, 1/m, ..., 1}.
inline double simplex_grid_size(std::size_t k, std::size_t m) {
  // C(m + k - 1, k - 1)
  double c = 1.0;
  for (std::size_t i = 1; i < k; ++i) c = c * static_cast<double>(m + i) / static_cast<double>(i);
  return std::round(c);
}

// Every point of the resolution-1/m grid on the (k-1)-simplex.
inline std::vector<std::vector<double>> simplex_grid(std::size_t k, std::size_t m) {
  if (k == 0 || m == 0) throw std::invalid_argument("simplex_grid: need K >= 1 and m >= 1");
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> counts(k, 0);
  // Enumerate compositions of m into k parts in lexicographic order.
  auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == k) {
      counts[pos] = left;
      std::vector<double> p(k);
      for (std::size_t j = 0; j < k; ++j) p[j] = static_cast<double>(counts[j]) / static_cast<double>(m);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[pos] = c;
      self(self, pos + 1, left - c);
    }
  };
  rec(rec, 0, m);
  return out;
}

inline std::vector<Comparator> expert_comparators(std::size_t k) {
  std::vector<Comparator> out;
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back({"expert:" + std::to_string(i), Distribution::point_mass(k, i), {}});
  }
  return out;
}

inline std::vector<Comparator> simplex_comparators(std::size_t k, std::size_t m) {
  std::vector<Comparator> out;
  for (auto& p : simplex_grid(k, m)) {
    std::string label = "grid:";
    for (std::size_t j = 0; j < k; ++j) {
      if (j) label += ',';
      label += std::to_string(static_cast<long long>(std::llround(p[j] * static_cast<double>(m))));
    }
    label += "/" + std::to_string(m);
    out.push_back({std::move(label), Distribution::from_mass(p), {}});
  }
  return out;
}

}  // namespace adaptive

#endif  // ADAPTIVE_CORE_GAME_HPP_
