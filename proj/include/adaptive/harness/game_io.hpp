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


// JSON descriptions of finite games and tail-validation instances.
//
// Game:
//   {"experts": K, "outcomes": "binary" | [[...], ...], "horizon": n,
//    "comparators": "experts" | {"simplex": m} | [{"label": ..., "mix": [...]}],
//    "prior": [...]}
// or, for a general loss matrix, "decisions": [...] and "loss": [[...], ...]
// (one row per decision) in place of "experts", plus optional "loss_range".

#ifndef ADAPTIVE_HARNESS_GAME_IO_HPP_
#define ADAPTIVE_HARNESS_GAME_IO_HPP_

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptive/complexity/function_table.hpp"
#include "adaptive/core/game.hpp"
#include "adaptive/core/tree.hpp"
#include "adaptive/harness/environments.hpp"
#include "adaptive/probtools/tails.hpp"

namespace adaptive {

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline GameSpec game_from_json(const Json& j) {
  detail::check_param_keys(j, "game", {"experts", "decisions", "outcomes", "loss", "loss_range", "comparators",
                                       "horizon", "prior"});
  const int horizon = j.at("horizon").get<int>();
  std::size_t k = 0;
  if (j.contains("experts")) k = j.at("experts").get<std::size_t>();
  else if (j.contains("decisions")) k = j.at("decisions").size();
  else throw std::invalid_argument("game: needs 'experts' or 'decisions'");

  std::vector<std::vector<double>> outcomes;
  const Json& jo = j.at("outcomes");
  if (jo.is_string()) {
    if (jo.get<std::string>() != "binary") throw std::invalid_argument("game: outcomes must be \"binary\" or a list");
    outcomes = binary_outcomes(k);
  } else {
    outcomes = jo.get<std::vector<std::vector<double>>>();
  }

  std::vector<Comparator> comps;
  const Json jc = j.value("comparators", Json("experts"));
  if (jc.is_string()) {
    if (jc.get<std::string>() != "experts") throw std::invalid_argument("game: comparators must be \"experts\", {\"simplex\": m} or a list");
    comps = expert_comparators(k);
  } else if (jc.is_object()) {
    comps = simplex_comparators(k, jc.at("simplex").get<std::size_t>());
  } else {
    for (const auto& c : jc) comps.push_back({c.at("label").get<std::string>(), Distribution(c.at("mix").get<std::vector<double>>()), {}});
  }

  std::optional<Distribution> prior;
  if (j.contains("prior")) prior = Distribution(j.at("prior").get<std::vector<double>>());
  LossRange range;
  if (j.contains("loss_range")) range = {j.at("loss_range").at(0).get<double>(), j.at("loss_range").at(1).get<double>()};

  if (j.contains("experts")) {
    return GameSpec::linear_experts(k, std::move(outcomes), horizon, std::move(comps), std::move(prior), range);
  }
  return GameSpec(j.at("decisions").get<std::vector<std::string>>(), std::move(outcomes),
                  j.at("loss").get<std::vector<std::vector<double>>>(), range, std::move(comps), horizon,
                  std::move(prior));
}

// {"depth": n, "functions": [[node values], ...], "bound": 1}
inline FunctionTable function_table_from_json(const Json& j) {
  return FunctionTable(j.at("depth").get<int>(), j.at("functions").get<std::vector<std::vector<double>>>(),
                       j.value("bound", 1.0));
}

// pinelis: {"depth": n, "nodes": [[vector], ...], "smoothness": 1}
// chaining: function table fields
// offset_process: function table fields plus "alpha", "gamma"
inline TailInstance tail_instance_from_json(TailKind kind, const Json& j) {
  switch (kind) {
    case TailKind::pinelis: {
      const int n = j.at("depth").get<int>();
      return PinelisInstance{BinaryTree<std::vector<double>>(n, j.at("nodes").get<std::vector<std::vector<double>>>()),
                             j.value("smoothness", 1.0)};
    }
    case TailKind::chaining:
      return ChainingInstance{function_table_from_json(j)};
    case TailKind::offset_process:
      return OffsetProcessInstance{function_table_from_json(j), j.value("alpha", 1.0), j.value("gamma", 1.0)};
  }
  throw std::logic_error("unreachable tail kind");
}

}  // namespace adaptive

#endif  // ADAPTIVE_HARNESS_GAME_IO_HPP_
