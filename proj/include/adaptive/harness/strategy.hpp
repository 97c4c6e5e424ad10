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


// Learners the harness can play on an experts game.

#ifndef ADAPTIVE_HARNESS_STRATEGY_HPP_
#define ADAPTIVE_HARNESS_STRATEGY_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adaptive/algorithms/exponential_weights.hpp"
#include "adaptive/algorithms/two_level.hpp"
#include "adaptive/harness/environments.hpp"

namespace adaptive {

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual Distribution predict() const = 0;
  // Prior over experts; rates measure KL against it.
  virtual const Distribution& prior() const = 0;
  virtual void observe(std::span<const double> y) = 0;
  // Upper bound on regret minus rate that the strategy certifies before play
  // (Rel_n at the empty prefix); 0 when it certifies nothing.
  virtual double certificate() const { return 0.0; }
};

class TwoLevelStrategy : public Strategy {
 public:
  explicit TwoLevelStrategy(TwoLevelEW ew) : ew_(std::move(ew)), cert_(ew_.relaxation_value()) {}
  std::string name() const override { return "two_level_ew"; }
  Distribution predict() const override { return ew_.predict(); }
  const Distribution& prior() const override { return ew_.prior(); }
  void observe(std::span<const double> y) override { ew_.observe(y); }
  double certificate() const override { return cert_; }
  const TwoLevelEW& state() const { return ew_; }

 private:
  TwoLevelEW ew_;
  double cert_;
};

// Exponential weights at a single radius R (learning rate sqrt(R / n)).
class HedgeStrategy : public Strategy {
 public:
  HedgeStrategy(Distribution prior, double radius, int horizon)
      : prior_(std::move(prior)), radius_(radius), horizon_(horizon), cumulative_(prior_.size(), 0.0) {}
  std::string name() const override { return "hedge"; }
  const Distribution& prior() const override { return prior_; }
  Distribution predict() const override { return lowlevel_ew(prior_, radius_, horizon_, std::span<const double>(cumulative_)); }
  void observe(std::span<const double> y) override {
    for (std::size_t k = 0; k < y.size(); ++k) cumulative_[k] += y[k];
  }

 private:
  Distribution prior_;
  double radius_;
  int horizon_;
  std::vector<double> cumulative_;
};

class PriorStrategy : public Strategy {
 public:
  explicit PriorStrategy(Distribution prior) : prior_(std::move(prior)) {}
  std::string name() const override { return "prior"; }
  Distribution predict() const override { return prior_; }
  const Distribution& prior() const override { return prior_; }
  void observe(std::span<const double>) override {}

 private:
  Distribution prior_;
};

inline constexpr std::array<std::string_view, 3> kStrategyNames{"two_level_ew", "hedge", "prior"};

inline std::unique_ptr<Strategy> make_strategy(std::string_view name, const Json& params,
                                               std::size_t k, int horizon) {
  Distribution prior = Distribution::uniform(k);
  if (params.is_object() && params.contains("prior")) {
    prior = Distribution(params.at("prior").get<std::vector<double>>());
    if (prior.size() != k) throw std::invalid_argument("strategy: prior needs one weight per expert");
  }
  if (name == "two_level_ew" || name == "two-level-ew") {
    // i_max may be given flat or as ladder.i_max.
    detail::check_param_keys(params, name, {"prior", "lambda_mode", "i_max", "ladder"});
    int i_max = RadiusLadder::default_i_max(horizon, k);
    if (params.is_object() && params.contains("i_max")) i_max = params.at("i_max").get<int>();
    if (params.is_object() && params.contains("ladder")) {
      detail::check_param_keys(params.at("ladder"), "ladder", {"i_max"});
      i_max = params.at("ladder").value("i_max", i_max);
    }
    const LambdaMode mode = lambda_mode_from_name(
        params.is_object() ? params.value("lambda_mode", std::string("optimized")) : "optimized");
    return std::make_unique<TwoLevelStrategy>(TwoLevelEW(prior, RadiusLadder(i_max), horizon, mode));
  }
  if (name == "hedge") {
    detail::check_param_keys(params, name, {"prior", "radius"});
    const double r = params.is_object() && params.contains("radius") ? params.at("radius").get<double>()
                                                                     : std::log(static_cast<double>(k));
    return std::make_unique<HedgeStrategy>(prior, r, horizon);
  }
  if (name == "prior") {
    detail::check_param_keys(params, name, {"prior"});
    return std::make_unique<PriorStrategy>(prior);
  }
  std::string known;
  for (auto s : kStrategyNames) known += (known.empty() ? "" : ", ") + std::string(s);
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "' (known: " + known + ")");
}

}  // namespace adaptive

#endif  // ADAPTIVE_HARNESS_STRATEGY_HPP_
