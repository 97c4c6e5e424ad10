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


// Loss-sequence generators for experts games. Every generator returns n loss
// vectors in [0, 1]^K and is a pure function of (params, K, n, engine).

#ifndef ADAPTIVE_HARNESS_ENVIRONMENTS_HPP_
#define ADAPTIVE_HARNESS_ENVIRONMENTS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "adaptive/core/rng.hpp"

namespace adaptive {

using LossSequence = std::vector<std::vector<double>>;
using Json = nlohmann::json;

inline constexpr const char* kLabVersionString = "1.0.0";

inline constexpr std::array<std::string_view, 5> kEnvironmentNames{
    "stochastic_bernoulli", "small_loss_leader", "quantile_block", "alternating_adversary", "file"};

namespace detail {

// Reads params[key] with a default and rejects keys outside `allowed`.
inline void check_param_keys(const Json& params, std::string_view where,
                             std::initializer_list<std::string_view> allowed) {
  if (params.is_null()) return;
  if (!params.is_object()) throw std::invalid_argument(std::string(where) + ": params must be an object");
  for (const auto& [key, _] : params.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      std::string known;
      for (auto a : allowed) known += (known.empty() ? "" : ", ") + std::string(a);
      throw std::invalid_argument(std::string(where) + ": unknown parameter '" + key +
                                  "' (known: " + known + ")");
    }
  }
}

inline double param_prob(const Json& params, const char* key, double fallback, std::string_view where) {
  const double v = params.is_object() && params.contains(key) ? params.at(key).get<double>() : fallback;
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": '" + key + "' must lie in [0, 1]");
  }
  return v;
}

inline LossSequence read_loss_file(const std::string& path, std::size_t k, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("file environment: cannot open '" + path + "'");
  LossSequence out;
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    const Json doc = Json::parse(in);
    const Json& rows = doc.is_object() ? doc.at("losses") : doc;
    for (const auto& r : rows) out.push_back(r.get<std::vector<double>>());
  } else {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<double> row;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
      out.push_back(std::move(row));
    }
  }
  if (out.size() < static_cast<std::size_t>(n)) {
    throw std::invalid_argument("file environment: '" + path + "' has " + std::to_string(out.size()) +
                                " rows, horizon is " + std::to_string(n));
  }
  out.resize(static_cast<std::size_t>(n));
  for (const auto& row : out) {
    if (row.size() != k) throw std::invalid_argument("file environment: row width != number of experts");
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("file environment: losses must lie in [0, 1]");
    }
  }
  return out;
}

}  // namespace detail

inline LossSequence generate_environment(std::string_view name, const Json& params, std::size_t k,
                                         int n, Engine& eng) {
  if (k < 1) throw std::invalid_argument("environment: needs at least one expert");
  if (n < 1) throw std::invalid_argument("environment: horizon must be >= 1");
  LossSequence out(static_cast<std::size_t>(n), std::vector<double>(k, 0.0));
  if (name == "stochastic_bernoulli") {
    // Independent Bernoulli(p_k) losses; "means" overrides the common "p".
    detail::check_param_keys(params, name, {"p", "means"});
    std::vector<double> means(k, detail::param_prob(params, "p", 0.5, name));
    if (params.is_object() && params.contains("means")) {
      means = params.at("means").get<std::vector<double>>();
      if (means.size() != k) throw std::invalid_argument("stochastic_bernoulli: 'means' needs K entries");
      for (double m : means) {
        if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("stochastic_bernoulli: means must lie in [0, 1]");
      }
    }
    for (auto& y : out) {
      for (std::size_t j = 0; j < k; ++j) y[j] = bernoulli(eng, means[j]) ? 1.0 : 0.0;
    }
  } else if (name == "small_loss_leader") {
    // One expert with a small loss rate among noisy ones.
    detail::check_param_keys(params, name, {"leader", "leader_rate", "other_rate"});
    const std::size_t leader = params.is_object() ? params.value("leader", std::size_t{0}) : 0;
    if (leader >= k) throw std::invalid_argument("small_loss_leader: leader index out of range");
    const double lr = detail::param_prob(params, "leader_rate", 0.05, name);
    const double orate = detail::param_prob(params, "other_rate", 0.5, name);
    for (auto& y : out) {
      for (std::size_t j = 0; j < k; ++j) y[j] = bernoulli(eng, j == leader ? lr : orate) ? 1.0 : 0.0;
    }
  } else if (name == "quantile_block") {
    // The first ceil(good_fraction K) experts share one loss sequence; every
    // other expert adds 1/2 on a random subset of rounds that always includes
    // round 1, so the block is exactly the set of minimizers.
    detail::check_param_keys(params, name, {"good_fraction", "good_rate", "bad_rate"});
    const double frac = params.is_object() ? params.value("good_fraction", 0.125) : 0.125;
    if (!(frac > 0.0 && frac <= 1.0)) throw std::invalid_argument("quantile_block: good_fraction must lie in (0, 1]");
    const double good_rate = detail::param_prob(params, "good_rate", 0.3, name);
    const double bad_rate = detail::param_prob(params, "bad_rate", 0.5, name);
    const auto good = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(k) - 1e-9));
    for (int t = 0; t < n; ++t) {
      auto& y = out[static_cast<std::size_t>(t)];
      const double base = bernoulli(eng, good_rate) ? 0.5 : 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const bool extra = j >= good && (t == 0 || bernoulli(eng, bad_rate));
        y[j] = base + (extra ? 0.5 : 0.0);
      }
    }
  } else if (name == "alternating_adversary") {
    // Even and odd experts take turns losing, switching every `period` rounds.
    detail::check_param_keys(params, name, {"period"});
    const int period = params.is_object() ? params.value("period", 1) : 1;
    if (period < 1) throw std::invalid_argument("alternating_adversary: period must be >= 1");
    for (int t = 0; t < n; ++t) {
      const std::size_t phase = static_cast<std::size_t>((t / period) % 2);
      for (std::size_t j = 0; j < k; ++j) out[static_cast<std::size_t>(t)][j] = (j % 2) == phase ? 1.0 : 0.0;
    }
  } else if (name == "file") {
    detail::check_param_keys(params, name, {"path"});
    if (!params.is_object() || !params.contains("path")) throw std::invalid_argument("file environment: needs 'path'");
    return detail::read_loss_file(params.at("path").get<std::string>(), k, n);
  } else {
    std::string known;
    for (auto e : kEnvironmentNames) known += (known.empty() ? "" : ", ") + std::string(e);
    throw std::invalid_argument("unknown environment '" + std::string(name) + "' (known: " + known + ")");
  }
  return out;
}

}  // namespace adaptive

#endif  // ADAPTIVE_HARNESS_ENVIRONMENTS_HPP_
