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


#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "adaptive/harness.hpp"

namespace adaptive {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / "adaptive_harness_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Environment, SmallLossLeaderWithZeroRate) {
  Engine eng(1);
  const auto y = generate_environment("small_loss_leader", Json{{"leader", 2}, {"leader_rate", 0.0}}, 5, 200, eng);
  double others = 0.0;
  for (const auto& row : y) {
    EXPECT_EQ(row[2], 0.0);
    others += row[0];
  }
  EXPECT_GT(others, 0.0);
}

TEST(Environment, QuantileBlockHasExactlyTheBlockAsMinimizers) {
  Engine eng(2);
  const auto y = generate_environment("quantile_block", Json{{"good_fraction", 0.125}}, 64, 50, eng);
  std::vector<double> cum(64, 0.0);
  for (const auto& row : y) for (std::size_t k = 0; k < 64; ++k) cum[k] += row[k];
  const double best = *std::min_element(cum.begin(), cum.end());
  EXPECT_EQ(std::count(cum.begin(), cum.end(), best), 8);
}

TEST(Environment, BernoulliMeanConcentrates) {
  Engine eng(3);
  const int n = 4000;
  const auto y = generate_environment("stochastic_bernoulli", Json{{"p", 0.5}}, 1, n, eng);
  double s = 0.0;
  for (const auto& row : y) s += row[0];
  EXPECT_NEAR(s / n, 0.5, 4.0 * std::sqrt(0.25 / n));
}

TEST(Environment, AlternatingAndDeterminism) {
  Engine a(5), b(5);
  const auto y = generate_environment("alternating_adversary", Json::object(), 3, 4, a);
  EXPECT_EQ(y[0], (std::vector<double>{1, 0, 1}));
  EXPECT_EQ(y[1], (std::vector<double>{0, 1, 0}));
  Engine c(9), d(9);
  EXPECT_EQ(generate_environment("stochastic_bernoulli", Json::object(), 4, 30, c),
            generate_environment("stochastic_bernoulli", Json::object(), 4, 30, d));
}

TEST(Environment, UnknownNameAndParameter) {
  Engine eng(1);
  try {
    generate_environment("random_walk", Json::object(), 2, 3, eng);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("quantile_block"), std::string::npos);
  }
  EXPECT_THROW(generate_environment("quantile_block", Json{{"good_frac", 0.5}}, 2, 3, eng), std::invalid_argument);
}

TEST(Environment, FileCsvAndJson) {
  const auto csv = scratch("losses.csv");
  std::ofstream(csv) << "# two experts\n0,1\n0.5,0.25\n1,0\n";
  Engine eng(0);
  const auto y = generate_environment("file", Json{{"path", csv.string()}}, 2, 3, eng);
  EXPECT_EQ(y[1], (std::vector<double>{0.5, 0.25}));
  const auto js = scratch("losses.json");
  std::ofstream(js) << R"({"losses": [[0, 1], [1, 0]]})";
  EXPECT_EQ(generate_environment("file", Json{{"path", js.string()}}, 2, 2, eng)[1], (std::vector<double>{1, 0}));
  EXPECT_THROW(generate_environment("file", Json{{"path", csv.string()}}, 2, 5, eng), std::invalid_argument);
}

ExperimentConfig base_config() {
  ExperimentConfig c;
  c.environment = "small_loss_leader";
  c.experts = 8;
  c.horizon = 256;
  c.rates = {{"kl_radius", Json::object()}};
  c.rng.seed = 3;
  return c;
}

TEST(RunExperiment, TwoLevelSmallLossLeaderNonnegativeSlack) {
  const auto recs = run_experiment(base_config());
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_GE(recs[0].min_slack, 0.0);
  EXPECT_GT(recs[0].certificate, 0.0);
  EXPECT_LE(recs[0].certificate, 4.0 * std::sqrt(256.0));
}

TEST(RunExperiment, QuantileComparatorsUnderPacBayes) {
  ExperimentConfig c = base_config();
  c.environment = "quantile_block";
  c.experts = 16;
  c.rates = {{"pac_bayes", Json::object()}};
  const auto rec = run_experiment(c).at(0);
  int seen = 0;
  for (const auto& row : rec.rates[0].rows) {
    for (const char* id : {"top:2", "top:4", "top:8"}) {
      if (row.id == id) {
        ++seen;
        EXPECT_GE(row.slack, 0.0) << id;
      }
    }
  }
  EXPECT_EQ(seen, 3);
}

TEST(RunExperiment, ZeroLossEnvironment) {
  ExperimentConfig c = base_config();
  c.environment = "stochastic_bernoulli";
  c.environment_params = {{"p", 0.0}};
  c.rates = {{"kl_radius", Json::object()}, {"pac_bayes", Json::object()}, {"fixed_vs_best", Json::object()}};
  for (const auto& ra : run_experiment(c).at(0).rates) {
    for (const auto& row : ra.rows) {
      EXPECT_LE(row.regret, 0.0);
      EXPECT_GE(row.rate, 0.0);
      EXPECT_GE(row.slack, row.rate);
    }
  }
}

TEST(RunExperiment, SlackIdentityIsExact) {
  ExperimentConfig c = base_config();
  c.environment = "stochastic_bernoulli";
  c.replicates = 3;
  c.rates = {{"kl_radius", Json::object()}, {"fixed_vs_best", Json::object()}, {"pac_bayes", Json::object()}};
  for (const auto& rec : run_experiment(c)) {
    for (const auto& ra : rec.rates) {
      for (const auto& row : ra.rows) EXPECT_EQ(row.regret + row.slack, row.rate + rec.certificate);
    }
  }
}

TEST(RunExperiment, BatteryAcrossEnvironments) {
  for (const char* env : {"stochastic_bernoulli", "small_loss_leader", "quantile_block", "alternating_adversary"}) {
    for (std::uint64_t seed : {1u, 2u}) {
      ExperimentConfig c = base_config();
      c.environment = env;
      c.experts = 4;
      c.horizon = 64;
      c.rng.seed = seed;
      const auto rec = run_experiment(c).at(0);
      EXPECT_GE(rec.min_slack, -1e-6 * c.horizon) << env;
    }
  }
}

TEST(RunExperiment, RejectsSupervisedRate) {
  ExperimentConfig c = base_config();
  c.rates = {{"predictable", Json::object()}};
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

TEST(RunExperiment, SampledPredictionsAreDeterministic) {
  ExperimentConfig c = base_config();
  c.sample_predictions = true;
  c.horizon = 32;
  const auto a = run_experiment(c), b = run_experiment(c);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a[0].sampled);
  for (double l : a[0].round_losses) EXPECT_TRUE(l == 0.0 || l == 1.0);
}

TEST(Config, ParsesSampleFiles) {
  const auto c = load_experiment_config(std::string(ADAPTIVE_TEST_DATA_DIR) + "/small_loss.json");
  EXPECT_EQ(c.experts, 8u);
  EXPECT_EQ(c.rates.size(), 2u);
  EXPECT_EQ(c.rng.seed, 7u);
  EXPECT_EQ(c.grid.resolution, 4u);
  const auto q = load_experiment_config(std::string(ADAPTIVE_TEST_DATA_DIR) + "/quantile.json");
  EXPECT_EQ(q.rates[0].params.at("sqrt_n_coef"), 4);
}

TEST(Config, StrictValidation) {
  Json j = {{"schema_version", 1}, {"horizon", 8}};
  EXPECT_NO_THROW(parse_experiment_config(j));
  j["horizn"] = 4;
  EXPECT_THROW(parse_experiment_config(j), std::invalid_argument);
  EXPECT_THROW(parse_experiment_config(Json{{"schema_version", 2}}), std::invalid_argument);
  EXPECT_THROW(parse_experiment_config(Json{{"schema_version", 1}, {"environment", {{"name", "nope"}}}}),
               std::invalid_argument);
  EXPECT_THROW(parse_experiment_config(Json{{"schema_version", 1}, {"rates", {"predictable"}}}),
               std::invalid_argument);
  EXPECT_THROW(parse_experiment_config(Json{{"schema_version", 1}, {"strategy", {{"name", "ftl"}}}}),
               std::invalid_argument);
  EXPECT_THROW(parse_experiment_config(Json{{"schema_version", 1}, {"rng", {{"algorithm", "pcg"}}}}),
               std::invalid_argument);
}

TEST(Emit, EmptyRecordsGiveHeaderOnlyCsv) {
  const auto p = scratch("empty.csv");
  emit_results({}, EmitFormat::csv, p.string());
  EXPECT_EQ(slurp(p), "replicate,rate_name,comparator_id,regret,rate,slack\n");
  EXPECT_EQ(slurp(rounds_csv_path(p.string())), "replicate,round,loss\n");
}

TEST(Emit, JsonRoundTripIsExact) {
  ExperimentConfig c = base_config();
  c.replicates = 2;
  c.rates = {{"kl_radius", Json::object()}, {"pac_bayes", Json::object()}};
  const auto recs = run_experiment(c);
  const auto p = scratch("round_trip.json");
  emit_results(recs, EmitFormat::json, p.string(), config_to_json(c));
  EXPECT_EQ(read_records_json(p.string()), recs);
}

TEST(Emit, NonFiniteValuesSurviveJson) {
  AuditRecord r;
  r.rates.push_back({"kl_radius", {{"x", 1.0, -0.5, kInf, kInf}}, kInf, "x"});
  const auto p = scratch("inf.json");
  write_records_json({r}, p.string());
  EXPECT_EQ(read_records_json(p.string()).at(0), r);
}

TEST(Emit, IdenticalConfigsGiveIdenticalBytes) {
  ExperimentConfig c = base_config();
  c.replicates = 2;
  for (const char* ext : {"csv", "json"}) {
    const auto a = scratch(std::string("a.") + ext), b = scratch(std::string("b.") + ext);
    emit_results(run_experiment(c), emit_format_from_name(ext), a.string(), config_to_json(c));
    emit_results(run_experiment(c), emit_format_from_name(ext), b.string(), config_to_json(c));
    EXPECT_EQ(slurp(a), slurp(b));
  }
}

TEST(Emit, UnwritablePathNamesThePath) {
  try {
    emit_results({}, EmitFormat::json, "/nonexistent_dir/x.json");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent_dir/x.json"), std::string::npos);
  }
}

}  // namespace
}  // namespace adaptive
