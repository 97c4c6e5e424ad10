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


// Relaxations Rel_n(y_{1:t}) with their induced strategies, and the checks
// that certify them:
//   initial    Rel_n(y_{1:n}) >= -inf_f {sum_t loss(f, y_t) + B_n(f)}
//   recursive  Rel_n(y_{1:t}) >= max_y {E_{q_{t+1}} loss(., y) + Rel_n(y_{1:t} y)}

#ifndef ADAPTIVE_ORACLE_RELAXATION_HPP_
#define ADAPTIVE_ORACLE_RELAXATION_HPP_

#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptive/algorithms/two_level.hpp"
#include "adaptive/bounds/adaptive_rate.hpp"
#include "adaptive/core/game.hpp"
#include "adaptive/core/rng.hpp"
#include "adaptive/oracle/comparator.hpp"
#include "adaptive/oracle/minimax.hpp"

namespace adaptive {

// Relaxation value and strategy after a prefix of outcome indices.
class RelaxationState {
 public:
  virtual ~RelaxationState() = default;
  virtual double value() const = 0;
  virtual Distribution strategy() const = 0;
  virtual void advance(std::size_t y) = 0;
  virtual std::unique_ptr<RelaxationState> clone() const = 0;
};

class Relaxation {
 public:
  virtual ~Relaxation() = default;
  virtual std::string name() const = 0;
  virtual std::unique_ptr<RelaxationState> start() const = 0;
};

// The two-level exponential-weights relaxation on a linear experts game.
class TwoLevelRelaxation : public Relaxation {
 public:
  TwoLevelRelaxation(const GameSpec& game, RadiusLadder ladder, LambdaMode mode)
      : game_(game), ladder_(ladder), mode_(mode) {
    for (std::size_t y = 0; y < game.num_outcomes(); ++y) {
      const auto out = game.outcome(y);
      if (out.size() != game.num_decisions()) {
        throw std::invalid_argument("two-level relaxation: needs a linear experts game");
      }
      for (std::size_t d = 0; d < out.size(); ++d) {
        if (game.loss(d, y) != out[d]) {
          throw std::invalid_argument("two-level relaxation: loss(d, y) must equal y[d]");
        }
      }
    }
  }

  std::string name() const override {
    return "two_level_ew(" + std::string(lambda_mode_name(mode_)) + ")";
  }

  std::unique_ptr<RelaxationState> start() const override {
    return std::make_unique<State>(game_, TwoLevelEW(game_.prior(), ladder_, game_.horizon(), mode_));
  }

 private:
  class State : public RelaxationState {
   public:
    State(const GameSpec& game, TwoLevelEW ew) : game_(game), ew_(std::move(ew)) {}
    double value() const override { return ew_.relaxation_value(); }
    Distribution strategy() const override { return ew_.predict(); }
    void advance(std::size_t y) override { ew_.observe(game_.outcome(y)); }
    std::unique_ptr<RelaxationState> clone() const override { return std::make_unique<State>(*this); }

   private:
    const GameSpec& game_;
    TwoLevelEW ew_;
  };

  const GameSpec& game_;
  RadiusLadder ladder_;
  LambdaMode mode_;
};

inline constexpr double kAdmissibilityTolerance = 1e-6;
inline constexpr double kExhaustiveAdmissibilityBudget = 1e5;

enum class ConditionKind { recursive, initial };

inline const char* condition_kind_name(ConditionKind k) {
  return k == ConditionKind::recursive ? "recursive" : "initial";
}

struct PrefixMargin {
  std::vector<std::size_t> prefix;
  ConditionKind kind = ConditionKind::recursive;
  double margin = 0.0;
};

struct AdmissibilityMode {
  bool exhaustive = true;
  std::size_t samples = 0;
  RngSpec rng;

  static AdmissibilityMode all() { return {}; }
  static AdmissibilityMode sampled(std::size_t count, RngSpec rng) { return {false, count, std::move(rng)}; }
};

struct AdmissibilityReport {
  std::string relaxation;
  bool exhaustive = true;
  std::vector<PrefixMargin> margins;
  double worst_recursive = kInf;
  double worst_initial = kInf;
  double worst_margin = kInf;
  std::vector<std::size_t> worst_prefix;
  ConditionKind worst_kind = ConditionKind::recursive;
  double tolerance = kAdmissibilityTolerance;
  bool pass = true;
};

namespace detail {

inline void record_margin(AdmissibilityReport& rep, PrefixMargin pm) {
  double& worst = pm.kind == ConditionKind::recursive ? rep.worst_recursive : rep.worst_initial;
  worst = std::min(worst, pm.margin);
  if (pm.margin < rep.worst_margin) {
    rep.worst_margin = pm.margin;
    rep.worst_prefix = pm.prefix;
    rep.worst_kind = pm.kind;
  }
  rep.margins.push_back(std::move(pm));
}

inline double recursive_margin(const RelaxationState& s, const GameSpec& game) {
  const Distribution q = s.strategy();
  double worst = kNegInf;
  for (std::size_t y = 0; y < game.num_outcomes(); ++y) {
    auto child = s.clone();
    child->advance(y);
    worst = std::max(worst, expected_loss(q, y, game) + child->value());
  }
  return s.value() - worst;
}

inline double initial_margin(const RelaxationState& s, const GameSpec& game, const AdaptiveRate& rate,
                             std::span<const std::size_t> seq) {
  return s.value() + comparator_infimum(game, rate, seq, true).value;
}

}  // namespace detail

inline AdmissibilityReport admissibility_check(const Relaxation& relax, const GameSpec& game,
                                               const AdaptiveRate& rate,
                                               const AdmissibilityMode& mode = AdmissibilityMode::all(),
                                               double tol = kAdmissibilityTolerance) {
  AdmissibilityReport rep;
  rep.relaxation = relax.name();
  rep.exhaustive = mode.exhaustive;
  rep.tolerance = tol;
  const int n = game.horizon();
  const std::size_t ny = game.num_outcomes();
  if (mode.exhaustive) {
    if (outcome_paths(game) > kExhaustiveAdmissibilityBudget) {
      throw std::length_error("admissibility: exhaustive mode needs |Y|^n <= 1e5; use sampled mode");
    }
    std::vector<std::size_t> prefix;
    auto visit = [&](auto&& self, const RelaxationState& s) -> void {
      if (static_cast<int>(prefix.size()) == n) {
        detail::record_margin(rep, {prefix, ConditionKind::initial, detail::initial_margin(s, game, rate, prefix)});
        return;
      }
      detail::record_margin(rep, {prefix, ConditionKind::recursive, detail::recursive_margin(s, game)});
      for (std::size_t y = 0; y < ny; ++y) {
        auto child = s.clone();
        child->advance(y);
        prefix.push_back(y);
        self(self, *child);
        prefix.pop_back();
      }
    };
    visit(visit, *relax.start());
  } else {
    // Sample a length uniformly in [0, n], then a uniform prefix of that length.
    for (std::size_t r = 0; r < mode.samples; ++r) {
      Engine eng = make_engine(mode.rng, r);
      const int len = static_cast<int>(uniform01(eng) * (n + 1));
      std::vector<std::size_t> prefix(static_cast<std::size_t>(len));
      auto s = relax.start();
      for (auto& y : prefix) {
        y = std::min(ny - 1, static_cast<std::size_t>(uniform01(eng) * static_cast<double>(ny)));
        s->advance(y);
      }
      if (len == n) {
        detail::record_margin(rep, {prefix, ConditionKind::initial, detail::initial_margin(*s, game, rate, prefix)});
      } else {
        detail::record_margin(rep, {prefix, ConditionKind::recursive, detail::recursive_margin(*s, game)});
      }
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

struct RegretCertificate {
  double learner_loss = 0.0;
  double comparator_term = 0.0;  // inf_f {sum_t loss(f, y_t) + B_n(f)}
  std::string comparator;        // the comparator attaining it
  double lhs = 0.0;              // learner_loss - comparator_term
  double relaxation = 0.0;       // Rel_n at the empty prefix
  double margin = 0.0;           // relaxation - lhs
};

// Plays the relaxation's strategy against a fixed outcome sequence.
inline RegretCertificate regret_certificate(const Relaxation& relax, const GameSpec& game,
                                            const AdaptiveRate& rate,
                                            std::span<const std::size_t> outcomes) {
  if (static_cast<int>(outcomes.size()) != game.horizon()) {
    throw std::invalid_argument("regret certificate: sequence length != horizon");
  }
  RegretCertificate c;
  auto s = relax.start();
  c.relaxation = s->value();
  for (std::size_t y : outcomes) {
    c.learner_loss += expected_loss(s->strategy(), y, game);
    s->advance(y);
  }
  const auto inf = comparator_infimum(game, rate, outcomes, true);
  c.comparator_term = inf.value;
  c.comparator = inf.label;
  c.lhs = c.learner_loss - c.comparator_term;
  c.margin = c.relaxation - c.lhs;
  return c;
}

}  // namespace adaptive

#endif  // ADAPTIVE_ORACLE_RELAXATION_HPP_
