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


// Experiment configuration (JSON, schema_version 1; unknown fields rejected)
// and the replicate loop.

#ifndef ADAPTIVE_HARNESS_EXPERIMENT_HPP_
#define ADAPTIVE_HARNESS_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptive/bounds/adaptive_rate.hpp"
#include "adaptive/harness/audit.hpp"
#include "adaptive/harness/environments.hpp"
#include "adaptive/harness/strategy.hpp"

namespace adaptive {

inline constexpr int kConfigSchemaVersion = 1;


struct RateConfig {
  std::string name;
  Json params = Json::object();
};

struct ExperimentConfig {
  std::string environment = "stochastic_bernoulli";
  Json environment_params = Json::object();
  std::size_t experts = 2;
  int horizon = 64;
  std::string strategy = "two_level_ew";
  Json strategy_params = Json::object();
  std::vector<RateConfig> rates{{"kl_radius", Json::object()}};
  std::size_t replicates = 1;
  RngSpec rng;
  AuditGridOptions grid;
  bool sample_predictions = false;
  std::string output_csv;
  std::string output_json;
};

inline AdaptiveRate make_rate(const RateConfig& rc) {
  const RateKind kind = rate_kind_from_name(rc.name);
  detail::check_param_keys(rc.params, "rate " + rc.name,
                           {"fstar", "class_size", "sqrt_n_coef", "smoothness", "k1", "k2", "gamma",
                            "rad_table", "radius_source", "constant"});
  RateParams p;
  const Json& j = rc.params;
  if (j.contains("fstar")) p.fstar = j.at("fstar").get<std::size_t>();
  if (j.contains("class_size")) p.class_size = j.at("class_size").get<std::size_t>();
  if (j.contains("sqrt_n_coef")) p.kl_sqrt_n_coef = j.at("sqrt_n_coef").get<double>();
  if (j.contains("smoothness")) p.smoothness = j.at("smoothness").get<double>();
  if (j.contains("k1")) p.k1 = j.at("k1").get<double>();
  if (j.contains("k2")) p.k2 = j.at("k2").get<double>();
  if (j.contains("gamma")) p.gamma = j.at("gamma").get<double>();
  if (j.contains("rad_table")) {
    for (const auto& e : j.at("rad_table")) p.rad_table.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
  }
  if (j.contains("radius_source")) {
    const auto s = j.at("radius_source").get<std::string>();
    if (s == "euclidean_norm") p.radius_source = RadiusSource::euclidean_norm;
    else if (s == "kl_divergence") p.radius_source = RadiusSource::kl_divergence;
    else throw std::invalid_argument("radius_source must be euclidean_norm or kl_divergence");
  }
  if (j.contains("constant")) p.constant = j.at("constant").get<double>();
  return AdaptiveRate(kind, std::move(p));
}

namespace detail {

inline void check_keys(const Json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw std::invalid_argument("config: '" + std::string(where) + "' must be an object");
  check_param_keys(j, "config " + std::string(where), allowed);
}

}  // namespace detail

inline ExperimentConfig parse_experiment_config(const Json& j) {
  detail::check_keys(j, "root", {"schema_version", "environment", "experts", "horizon", "strategy", "rates",
                                 "replicates", "rng", "grid", "sample_predictions", "output"});
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kConfigSchemaVersion) {
    throw std::invalid_argument("config: schema_version must be " + std::to_string(kConfigSchemaVersion));
  }
  ExperimentConfig c;
  if (j.contains("environment")) {
    const Json& e = j.at("environment");
    detail::check_keys(e, "environment", {"name", "params"});
    c.environment = e.at("name").get<std::string>();
    if (e.contains("params")) c.environment_params = e.at("params");
  }
  if (j.contains("experts")) c.experts = j.at("experts").get<std::size_t>();
  if (j.contains("horizon")) c.horizon = j.at("horizon").get<int>();
  if (c.horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
  if (c.experts < 1) throw std::invalid_argument("config: experts must be >= 1");
  if (j.contains("strategy")) {
    const Json& s = j.at("strategy");
    detail::check_keys(s, "strategy", {"name", "params"});
    c.strategy = s.at("name").get<std::string>();
    if (s.contains("params")) c.strategy_params = s.at("params");
  }
  if (j.contains("rates")) {
    c.rates.clear();
    for (const auto& r : j.at("rates")) {
      if (r.is_string()) {
        c.rates.push_back({r.get<std::string>(), Json::object()});
      } else {
        detail::check_keys(r, "rates[]", {"name", "params"});
        c.rates.push_back({r.at("name").get<std::string>(), r.value("params", Json::object())});
      }
    }
  }
  if (j.contains("replicates")) c.replicates = j.at("replicates").get<std::size_t>();
  if (c.replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
  if (j.contains("rng")) {
    const Json& r = j.at("rng");
    detail::check_keys(r, "rng", {"algorithm", "seed"});
    c.rng.algorithm = r.value("algorithm", std::string(kDefaultRngAlgorithm));
    c.rng.seed = r.value("seed", std::uint64_t{0});
  }
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    detail::check_keys(g, "grid", {"resolution", "max_points", "quantiles", "kl_refinement"});
    c.grid.resolution = g.value("resolution", c.grid.resolution);
    c.grid.max_grid_points = g.value("max_points", c.grid.max_grid_points);
    c.grid.quantiles = g.value("quantiles", c.grid.quantiles);
    c.grid.kl_refinement = g.value("kl_refinement", c.grid.kl_refinement);
  }
  if (j.contains("sample_predictions")) c.sample_predictions = j.at("sample_predictions").get<bool>();
  if (j.contains("output")) {
    const Json& o = j.at("output");
    detail::check_keys(o, "output", {"csv", "json"});
    c.output_csv = o.value("csv", std::string());
    c.output_json = o.value("json", std::string());
  }
  // Resolve names now so typos fail before any work.
  (void)make_engine(c.rng);
  for (const auto& r : c.rates) require_experts_rate(make_rate(r));
  (void)make_strategy(c.strategy, c.strategy_params, c.experts, c.horizon);
  Engine probe(0);
  (void)generate_environment(c.environment, c.environment_params, c.experts, 1, probe);
  return c;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_experiment_config(j);
}

inline Json config_to_json(const ExperimentConfig& c) {
  Json rates = Json::array();
  for (const auto& r : c.rates) rates.push_back({{"name", r.name}, {"params", r.params}});
  return {
      {"schema_version", kConfigSchemaVersion},
      {"environment", {{"name", c.environment}, {"params", c.environment_params}}},
      {"experts", c.experts},
      {"horizon", c.horizon},
      {"strategy", {{"name", c.strategy}, {"params", c.strategy_params}}},
      {"rates", rates},
      {"replicates", c.replicates},
      {"rng", {{"algorithm", c.rng.algorithm}, {"seed", c.rng.seed}}},
      {"grid",
       {{"resolution", c.grid.resolution},
        {"max_points", c.grid.max_grid_points},
        {"quantiles", c.grid.quantiles},
        {"kl_refinement", c.grid.kl_refinement}}},
      {"sample_predictions", c.sample_predictions},
  };
}

// Replicate r draws its environment from engine stream 2r and, when sampling
// predictions, its decisions from stream 2r + 1.
inline std::vector<AuditRecord> run_experiment(const ExperimentConfig& c) {
  std::vector<AdaptiveRate> rates;
  for (const auto& r : c.rates) rates.push_back(make_rate(r));
  std::vector<AuditRecord> out;
  for (std::size_t rep = 0; rep < c.replicates; ++rep) {
    Engine env = make_engine(c.rng, 2 * rep);
    const auto losses = generate_environment(c.environment, c.environment_params, c.experts, c.horizon, env);
    auto strategy = make_strategy(c.strategy, c.strategy_params, c.experts, c.horizon);
    std::optional<Engine> sampler;
    if (c.sample_predictions) sampler = make_engine(c.rng, 2 * rep + 1);
    AuditRecord rec = audit_sequence(*strategy, losses, rates, c.grid, sampler ? &*sampler : nullptr);
    rec.replicate = rep;
    rec.environment = c.environment;
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace adaptive

#endif  // ADAPTIVE_HARNESS_EXPERIMENT_HPP_
