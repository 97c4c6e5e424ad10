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

#ifndef ADAPTIVE_BOUNDS_ADAPTIVE_RATE_HPP_
#define ADAPTIVE_BOUNDS_ADAPTIVE_RATE_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adaptive/bounds/rates.hpp"
#include "adaptive/core/game.hpp"

namespace adaptive {

enum class RateKind {
  spectral,
  predictable,
  fixed_vs_best,
  pac_bayes,
  kl_radius,
  norm_adaptive,
  generic_radius,
  uniform_constant,
};

inline constexpr std::array<std::pair<RateKind, std::string_view>, 8> kRateNames{{
    {RateKind::spectral, "spectral"},
    {RateKind::predictable, "predictable"},
    {RateKind::fixed_vs_best, "fixed_vs_best"},
    {RateKind::pac_bayes, "pac_bayes"},
    {RateKind::kl_radius, "kl_radius"},
    {RateKind::norm_adaptive, "norm_adaptive"},
    {RateKind::generic_radius, "generic_radius"},
    {RateKind::uniform_constant, "uniform_constant"},
}};

inline std::string_view rate_kind_name(RateKind k) {
  for (const auto& [kind, name] : kRateNames) {
    if (kind == k) return name;
  }
  return "?";
}

inline RateKind rate_kind_from_name(std::string_view name) {
  for (const auto& [kind, n] : kRateNames) {
    if (n == name) return kind;
  }
  std::string known;
  for (const auto& [kind, n] : kRateNames) known += (known.empty() ? "" : ", ") + std::string(n);
  throw std::invalid_argument("unknown rate '" + std::string(name) + "' (known: " + known + ")");
}

// How generic_radius measures a comparator's complexity radius.
enum class RadiusSource { euclidean_norm, kl_divergence };

struct RateParams {
  std::optional<Distribution> prior;      // pac_bayes, kl_radius; defaults to the game prior
  std::size_t fstar = 0;                  // fixed_vs_best: the expert fixed in advance
  std::optional<std::size_t> class_size;  // fixed_vs_best: N, defaults to the decision count
  double kl_sqrt_n_coef = 4.0;            // kl_radius: coefficient of the trailing sqrt(n)
  double smoothness = 1.0;                // norm_adaptive: D
  double k1 = kGenericK1;                 // generic_radius
  double k2 = kGenericK2;
  double gamma = 1.0;
  RadTable rad_table;
  RadiusSource radius_source = RadiusSource::euclidean_norm;
  double constant = 0.0;                  // uniform_constant
  std::optional<CoveringProfile> profile;  // predictable
};

// Everything a rate may look at for one comparator after n rounds. The input
// sequence x is the singleton {0}; supervised rates take explicit f values
// and predictions instead.
struct RateInput {
  const Comparator& comparator;
  std::span<const std::vector<double>> outcomes;   // y_1..y_n as vectors
  std::span<const double> comparator_losses;       // loss(f, y_t) per round
  std::span<const double> f_values = {};           // predictable: f(x_t)
  std::span<const double> predictions = {};        // predictable: M_t
};

class AdaptiveRate {
 public:
  explicit AdaptiveRate(RateKind kind, RateParams params = {})
      : kind_(kind), params_(std::move(params)) {}

  static AdaptiveRate constant(double c) {
    RateParams p;
    p.constant = c;
    return AdaptiveRate(RateKind::uniform_constant, std::move(p));
  }

  RateKind kind() const { return kind_; }
  std::string_view name() const { return rate_kind_name(kind_); }
  const RateParams& params() const { return params_; }

  // True for rates whose comparator class is a simplex with a KL-type penalty;
  // the oracle refines their comparator infimum with KL-ball minimizers.
  bool kl_type() const { return kind_ == RateKind::pac_bayes || kind_ == RateKind::kl_radius; }

  double evaluate(const RateInput& in, const Distribution& game_prior) const {
    const int n = static_cast<int>(in.outcomes.size());
    const Distribution& prior = params_.prior ? *params_.prior : game_prior;
    switch (kind_) {
      case RateKind::spectral:
        if (in.outcomes.empty()) throw std::invalid_argument("spectral rate: empty outcome sequence");
        return spectral_rate(in.outcomes, in.outcomes.front().size());
      case RateKind::predictable:
        if (in.f_values.empty() || !params_.profile) {
          throw std::invalid_argument(
              "predictable rate needs supervised inputs (f values, predictions) and a covering profile");
        }
        return predictable_rate(in.f_values, in.predictions, *params_.profile, n);
      case RateKind::fixed_vs_best: {
        // Without supervised inputs the comparator's value on round t is its loss.
        const std::size_t k = in.comparator.mix.size();
        if (params_.fstar >= k) throw std::out_of_range("fixed_vs_best: f* index out of range");
        std::vector<double> fstar(in.outcomes.size());
        for (std::size_t t = 0; t < fstar.size(); ++t) {
          if (in.outcomes[t].size() != k) {
            throw std::invalid_argument("fixed_vs_best on a game needs experts-style loss vectors");
          }
          fstar[t] = in.outcomes[t][params_.fstar];
        }
        return fixed_vs_best_rate(in.comparator_losses, fstar, params_.class_size.value_or(k));
      }
      case RateKind::pac_bayes:
        return pacbayes_rate(in.comparator.mix, prior, in.outcomes);
      case RateKind::kl_radius:
        return kl_radius_rate(in.comparator.mix, prior, n, params_.kl_sqrt_n_coef);
      case RateKind::norm_adaptive:
        return norm_adaptive_rate(euclidean_norm(in.comparator.point), params_.smoothness, n);
      case RateKind::generic_radius: {
        const double r = params_.radius_source == RadiusSource::euclidean_norm
                             ? euclidean_norm(in.comparator.point)
                             : kl_divergence(in.comparator.mix, prior);
        return generic_radius_rate(r, params_.rad_table, params_.k1, params_.k2, params_.gamma, n);
      }
      case RateKind::uniform_constant:
        return params_.constant;
    }
    throw std::logic_error("unreachable rate kind");
  }

  static double euclidean_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  }

 private:
  RateKind kind_;
  RateParams params_;
};

}  // namespace adaptive

#endif  // ADAPTIVE_BOUNDS_ADAPTIVE_RATE_HPP_
