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


// Offset minimax value by backward induction over outcome histories:
//   V(y_{1:n}) = -inf_f {sum_t loss(f, y_t) + B_n(f; y_{1:n})}
//   V(h)       = min_q max_y {E_q loss(., y) + V(h y)}
// and the achievability verdict A_n <= tol.

#ifndef ADAPTIVE_ORACLE_MINIMAX_HPP_
#define ADAPTIVE_ORACLE_MINIMAX_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptive/bounds/adaptive_rate.hpp"
#include "adaptive/core/game.hpp"
#include "adaptive/oracle/comparator.hpp"
#include "adaptive/oracle/matrix_game.hpp"

namespace adaptive {

inline constexpr double kDefaultOracleBudget = 1e6;
inline constexpr double kAchievabilityTolerance = 1e-7;

// History key: outcome indices joined by commas; the root is "".
inline std::string history_key(std::span<const std::size_t> h) {
  std::string k;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) k += ',';
    k += std::to_string(h[i]);
  }
  return k;
}

struct GameValueCache {
  int horizon = 0;
  std::map<std::string, double> values;
};

struct OffsetMinimaxOptions {
  double budget = kDefaultOracleBudget;  // cap on |Y|^n
  bool refine = true;                    // KL-ball refinement of leaf infima
  bool keep_cache = false;
};

struct OffsetMinimaxResult {
  double value = 0.0;       // with refinement when it applies
  double grid_value = 0.0;  // comparator grid only
  bool refined = false;
  std::vector<std::size_t> worst_path;  // column best responses from the root
  std::size_t leaves = 0;
  std::size_t interior = 0;
  GameValueCache cache;
};

inline double outcome_paths(const GameSpec& game) {
  return std::pow(static_cast<double>(game.num_outcomes()), game.horizon());
}

namespace detail {

struct Induction {
  const GameSpec& game;
  std::function<double(std::span<const std::size_t>)> leaf;
  GameValueCache* cache = nullptr;
  std::size_t leaves = 0;
  std::size_t interior = 0;
  std::vector<std::size_t> h;

  double run() {
    const int n = game.horizon();
    if (static_cast<int>(h.size()) == n) {
      ++leaves;
      const double v = leaf(h);
      if (cache) cache->values[history_key(h)] = v;
      return v;
    }
    const std::size_t nd = game.num_decisions(), ny = game.num_outcomes();
    std::vector<double> child(ny);
    for (std::size_t y = 0; y < ny; ++y) {
      h.push_back(y);
      child[y] = run();
      h.pop_back();
    }
    ++interior;
    std::vector<double> m(nd * ny);
    for (std::size_t d = 0; d < nd; ++d) {
      for (std::size_t y = 0; y < ny; ++y) m[d * ny + y] = game.loss(d, y) + child[y];
    }
    const double v = matrix_game_value(m, nd, ny).value;
    if (cache) cache->values[history_key(h)] = v;
    return v;
  }
};

// Follows the column player's best response to the optimal row mixture.
inline std::vector<std::size_t> worst_path(const GameSpec& game,
                                           const std::function<double(std::span<const std::size_t>)>& value_of) {
  std::vector<std::size_t> h;
  const std::size_t nd = game.num_decisions(), ny = game.num_outcomes();
  while (static_cast<int>(h.size()) < game.horizon()) {
    std::vector<double> child(ny);
    for (std::size_t y = 0; y < ny; ++y) {
      h.push_back(y);
      child[y] = value_of(h);
      h.pop_back();
    }
    std::vector<double> m(nd * ny);
    for (std::size_t d = 0; d < nd; ++d) {
      for (std::size_t y = 0; y < ny; ++y) m[d * ny + y] = game.loss(d, y) + child[y];
    }
    const auto sol = matrix_game_value(m, nd, ny);
    std::size_t best = 0;
    double best_v = kNegInf;
    for (std::size_t y = 0; y < ny; ++y) {
      const double v = expected_loss(sol.row_mix, y, game) + child[y];
      if (v > best_v + 1e-12) {
        best_v = v;
        best = y;
      }
    }
    h.push_back(best);
  }
  return h;
}

}  // namespace detail

inline OffsetMinimaxResult offset_minimax(const GameSpec& game, const AdaptiveRate& rate,
                                          const OffsetMinimaxOptions& opt = {}) {
  const double paths = outcome_paths(game);
  if (paths > opt.budget) {
    throw std::length_error("offset minimax: needs " + std::to_string(static_cast<long long>(paths)) +
                            " outcome paths, budget is " +
                            std::to_string(static_cast<long long>(opt.budget)));
  }
  OffsetMinimaxResult r;
  r.cache.horizon = game.horizon();
  const bool refine = opt.refine && rate.kl_type();
  auto leaf_fn = [&](bool ref) {
    return [&game, &rate, ref](std::span<const std::size_t> seq) {
      return -comparator_infimum(game, rate, seq, ref).value;
    };
  };
  // The induction whose value is reported keeps its cache for the trace.
  detail::Induction grid{game, leaf_fn(false), refine ? nullptr : &r.cache, 0, 0, {}};
  r.grid_value = grid.run();
  r.leaves = grid.leaves;
  r.interior = grid.interior;
  r.value = r.grid_value;
  if (refine) {
    detail::Induction ref{game, leaf_fn(true), &r.cache, 0, 0, {}};
    r.value = ref.run();
    r.refined = true;
  }
  r.worst_path = detail::worst_path(game, [&](std::span<const std::size_t> h) {
    return r.cache.values.at(history_key(h));
  });
  if (!opt.keep_cache) r.cache.values.clear();
  return r;
}

inline double offset_minimax_value(const GameSpec& game, const AdaptiveRate& rate) {
  return offset_minimax(game, rate).value;
}

struct AchievabilityVerdict {
  bool achievable = false;
  double value = 0.0;       // A_n used for the verdict
  double grid_value = 0.0;  // grid-only A_n
  bool refined = false;
  double tolerance = kAchievabilityTolerance;
  std::vector<std::size_t> worst_path;
};

// Achievable iff A_n <= tol. With refinement the verdict uses the refined
// value, which is never below the grid-only one.
inline AchievabilityVerdict achievability_check(const GameSpec& game, const AdaptiveRate& rate,
                                                double tol = kAchievabilityTolerance,
                                                const OffsetMinimaxOptions& opt = {}) {
  const auto r = offset_minimax(game, rate, opt);
  AchievabilityVerdict v;
  v.value = r.value;
  v.grid_value = r.grid_value;
  v.refined = r.refined;
  v.tolerance = tol;
  v.achievable = r.value <= tol;
  v.worst_path = r.worst_path;
  return v;
}

}  // namespace adaptive

#endif  // ADAPTIVE_ORACLE_MINIMAX_HPP_
