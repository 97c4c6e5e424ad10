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


// Adaptive-regret audits: plays a strategy against a loss sequence and, for
// every requested rate and every comparator on the audit grid, records
//   slack(f) = rate(f) + certificate - regret(f).

#ifndef ADAPTIVE_HARNESS_AUDIT_HPP_
#define ADAPTIVE_HARNESS_AUDIT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptive/algorithms/kl_ball.hpp"
#include "adaptive/bounds/adaptive_rate.hpp"
#include "adaptive/core/game.hpp"
#include "adaptive/core/ladder.hpp"
#include "adaptive/harness/strategy.hpp"

namespace adaptive {

// Audited quantities live on a 2^-32 grid, so sums of two of them (below
// 2^20 in magnitude) are exact and slack bookkeeping is an identity.
inline double quantize(double x) {
  if (!std::isfinite(x)) return x;
  return std::ldexp(std::nearbyint(std::ldexp(x, 32)), -32);
}

struct AuditGridOptions {
  std::size_t resolution = 16;   // simplex grid step 1/resolution; 0 disables it
  double max_grid_points = 5000;  // larger simplex grids are skipped
  bool quantiles = true;         // uniform over the k best experts, k = 2, 4, ...
  bool kl_refinement = true;     // KL-ball minimizers per ladder rung for KL-type rates
};

struct ComparatorAudit {
  std::string id;
  double loss = 0.0;
  double regret = 0.0;
  double rate = 0.0;
  double slack = 0.0;

  friend bool operator==(const ComparatorAudit&, const ComparatorAudit&) = default;
};

struct RateAudit {
  std::string rate;
  std::vector<ComparatorAudit> rows;
  double min_slack = kInf;
  std::string argmin;

  friend bool operator==(const RateAudit&, const RateAudit&) = default;
};

struct AuditRecord {
  std::size_t replicate = 0;
  std::string environment;
  std::string strategy;
  std::size_t experts = 0;
  int horizon = 0;
  bool sampled = false;
  std::vector<double> round_losses;
  double learner_loss = 0.0;
  double certificate = 0.0;
  std::vector<RateAudit> rates;
  double min_slack = kInf;
  std::string argmin_rate;
  std::string argmin_comparator;
  std::vector<std::string> notes;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

// Rates that only need the comparator mixture and the loss vectors.
inline void require_experts_rate(const AdaptiveRate& rate) {
  switch (rate.kind()) {
    case RateKind::predictable:
      throw std::invalid_argument("rate 'predictable' needs supervised inputs x_t; not available on an experts game");
    case RateKind::norm_adaptive:
      throw std::invalid_argument("rate 'norm_adaptive' needs comparators of norm >= 1 in a vector space; not an experts rate");
    case RateKind::generic_radius:
      if (rate.params().rad_table.empty()) {
        throw std::invalid_argument("rate 'generic_radius' needs a Rademacher table (rad_table)");
      }
      break;
    default:
      break;
  }
}

// Point masses, then the simplex grid, then quantile comparators built from
// the final cumulative losses.
inline std::vector<Comparator> audit_comparators(std::span<const double> cumulative,
                                                 const AuditGridOptions& opt,
                                                 std::vector<std::string>* notes = nullptr) {
  const std::size_t k = cumulative.size();
  std::vector<Comparator> out = expert_comparators(k);
  if (opt.resolution > 0 && k > 1) {
    if (simplex_grid_size(k, opt.resolution) <= opt.max_grid_points) {
      for (auto& c : simplex_comparators(k, opt.resolution)) out.push_back(std::move(c));
    } else if (notes) {
      notes->push_back("simplex grid at resolution 1/" + std::to_string(opt.resolution) + " has " +
                       std::to_string(static_cast<long long>(simplex_grid_size(k, opt.resolution))) +
                       " points; skipped");
    }
  }
  if (opt.quantiles) {
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cumulative[a] < cumulative[b]; });
    for (std::size_t top = 2; top < k; top *= 2) {
      std::vector<double> w(k, 0.0);
      for (std::size_t j = 0; j < top; ++j) w[order[j]] = 1.0;
      out.push_back({"top:" + std::to_string(top), Distribution::from_mass(std::move(w)), {}});
    }
  }
  for (auto& c : out) {
    if (c.point.empty()) c.point.assign(c.mix.weights().begin(), c.mix.weights().end());
  }
  return out;
}

inline std::vector<Comparator> kl_refinement_comparators(const Distribution& prior,
                                                         std::span<const double> cumulative, int horizon) {
  std::vector<Comparator> out;
  const RadiusLadder ladder(RadiusLadder::default_i_max(horizon, prior.size()));
  for (double r : ladder.radii()) {
    auto sol = kl_ball_minimizer(prior, r, cumulative);
    Comparator c{"kl_ball:" + std::to_string(static_cast<long long>(r)), std::move(sol.minimizer), {}};
    c.point.assign(c.mix.weights().begin(), c.mix.weights().end());
    out.push_back(std::move(c));
  }
  return out;
}

// Plays `strategy` on `losses` with exact mixture losses, or with a sampled
// decision per round when `sampler` is given.
inline AuditRecord audit_sequence(Strategy& strategy, const LossSequence& losses,
                                  std::span<const AdaptiveRate> rates,
                                  const AuditGridOptions& grid = {}, Engine* sampler = nullptr) {
  if (losses.empty()) throw std::invalid_argument("audit: empty loss sequence");
  const std::size_t k = losses.front().size();
  for (const auto& r : rates) require_experts_rate(r);
  AuditRecord rec;
  rec.strategy = strategy.name();
  rec.experts = k;
  rec.horizon = static_cast<int>(losses.size());
  rec.sampled = sampler != nullptr;
  rec.certificate = quantize(strategy.certificate());
  std::vector<double> cumulative(k, 0.0);
  double learner = 0.0;
  for (const auto& y : losses) {
    if (y.size() != k) throw std::invalid_argument("audit: loss vectors differ in dimension");
    const Distribution q = strategy.predict();
    double l;
    if (sampler) {
      const double u = uniform01(*sampler);
      std::size_t d = 0;
      double acc = q[0];
      while (d + 1 < k && u >= acc) acc += q[++d];
      l = y[d];
    } else {
      l = q.dot(y);
    }
    rec.round_losses.push_back(l);
    learner += l;
    strategy.observe(y);
    for (std::size_t j = 0; j < k; ++j) cumulative[j] += y[j];
  }
  rec.learner_loss = quantize(learner);

  const Distribution prior = strategy.prior();
  const auto base = audit_comparators(cumulative, grid, &rec.notes);
  std::vector<Comparator> refined;
  for (const auto& rate : rates) {
    RateAudit ra;
    ra.rate = std::string(rate.name());
    const bool refine = grid.kl_refinement && rate.kl_type();
    if (refine && refined.empty()) refined = kl_refinement_comparators(prior, cumulative, rec.horizon);
    auto audit_one = [&](const Comparator& c) {
      std::vector<double> per_round(losses.size());
      double total = 0.0;
      for (std::size_t t = 0; t < losses.size(); ++t) {
        per_round[t] = c.mix.dot(losses[t]);
        total += per_round[t];
      }
      ComparatorAudit row;
      row.id = c.label;
      row.loss = quantize(total);
      row.regret = quantize(learner - total);
      row.rate = quantize(rate.evaluate(RateInput{c, losses, per_round}, prior));
      row.slack = (row.rate + rec.certificate) - row.regret;
      if (row.slack < ra.min_slack || ra.argmin.empty()) {
        ra.min_slack = row.slack;
        ra.argmin = row.id;
      }
      ra.rows.push_back(std::move(row));
    };
    for (const auto& c : base) audit_one(c);
    if (refine) {
      for (const auto& c : refined) audit_one(c);
    }
    if (ra.min_slack < rec.min_slack || rec.argmin_rate.empty()) {
      rec.min_slack = ra.min_slack;
      rec.argmin_rate = ra.rate;
      rec.argmin_comparator = ra.argmin;
    }
    rec.rates.push_back(std::move(ra));
  }
  return rec;
}

}  // namespace adaptive

#endif  // ADAPTIVE_HARNESS_AUDIT_HPP_
