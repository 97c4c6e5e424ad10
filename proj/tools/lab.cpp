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


// lab: command-line front end. Every subcommand writes a JSON report and
// exits 0 only when its checks pass (1 on a failed check, 2 on an error).

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adaptive.hpp"

namespace {

using adaptive::Json;

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty()) out.push_back(std::stod(cell));
  }
  return out;
}

Json path_json(const std::vector<std::size_t>& p) { return Json(p); }

adaptive::AdaptiveRate rate_from_flags(const std::string& name, const std::string& params) {
  return adaptive::make_rate({name, params.empty() ? Json::object() : Json::parse(params)});
}

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string csv, json, report;
  double tolerance = 1e-6;
};

int cmd_run(const RunFlags& f, bool audit) {
  auto cfg = adaptive::load_experiment_config(f.config);
  if (f.seed) cfg.rng.seed = *f.seed;
  if (!f.csv.empty()) cfg.output_csv = f.csv;
  if (!f.json.empty()) cfg.output_json = f.json;
  const auto records = adaptive::run_experiment(cfg);
  Json meta = {{"command", audit ? "audit" : "run"}, {"config", adaptive::config_to_json(cfg)}};
  bool pass = true;
  if (audit) {
    const double floor = -f.tolerance * cfg.horizon;
    for (const auto& r : records) pass = pass && r.min_slack >= floor;
    meta["slack_floor"] = floor;
    meta["pass"] = pass;
  }
  for (const auto& r : records) {
    std::cout << "replicate " << r.replicate << ": learner_loss=" << adaptive::format_double(r.learner_loss)
              << " certificate=" << adaptive::format_double(r.certificate)
              << " min_slack=" << adaptive::format_double(r.min_slack) << " (" << r.argmin_rate << ", "
              << r.argmin_comparator << ")\n";
  }
  if (!cfg.output_csv.empty()) adaptive::write_records_csv(records, cfg.output_csv);
  std::string report = f.report;
  if (report.empty()) report = cfg.output_json.empty() ? "lab_" + std::string(audit ? "audit" : "run") + ".json" : cfg.output_json;
  adaptive::write_records_json(records, report, meta);
  if (audit) std::cout << (pass ? "PASS" : "FAIL") << " audit: min slack over " << records.size() << " replicates\n";
  return pass ? 0 : 1;
}

struct OracleFlags {
  std::string game, rate = "kl_radius", rate_params, report = "lab_oracle.json";
  double tol = adaptive::kAchievabilityTolerance;
  double budget = adaptive::kDefaultOracleBudget;
  bool no_refine = false;
};

int cmd_oracle(const OracleFlags& f) {
  const auto game = adaptive::game_from_json(adaptive::read_json_file(f.game));
  const auto rate = rate_from_flags(f.rate, f.rate_params);
  adaptive::OffsetMinimaxOptions opt;
  opt.budget = f.budget;
  opt.refine = !f.no_refine;
  const auto v = adaptive::achievability_check(game, rate, f.tol, opt);
  Json rep = {{"command", "oracle"},
              {"rate", f.rate},
              {"value", v.value},
              {"grid_value", v.grid_value},
              {"refined", v.refined},
              {"tolerance", v.tolerance},
              {"achievable", v.achievable},
              {"worst_path", path_json(v.worst_path)}};
  adaptive::write_json_file(rep, f.report);
  std::cout << "A_n = " << adaptive::format_double(v.value) << " (grid " << adaptive::format_double(v.grid_value)
            << "): " << (v.achievable ? "achievable" : "not achievable") << "\n";
  return v.achievable ? 0 : 1;
}

struct AdmissibleFlags {
  std::string game, strategy = "two_level_ew", lambda_mode = "optimized";
  int i_max = 0;
  std::string rate = "kl_radius", rate_params, report = "lab_admissible.json";
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tol = adaptive::kAdmissibilityTolerance;
};

int cmd_admissible(const AdmissibleFlags& f) {
  const auto game = adaptive::game_from_json(adaptive::read_json_file(f.game));
  if (f.strategy != "two_level_ew" && f.strategy != "two-level-ew") {
    throw std::invalid_argument("admissible: unknown relaxation '" + f.strategy + "' (known: two_level_ew)");
  }
  const int i_max = f.i_max > 0 ? f.i_max : adaptive::RadiusLadder::default_i_max(game.horizon(), game.num_decisions());
  const adaptive::TwoLevelRelaxation relax(game, adaptive::RadiusLadder(i_max),
                                           adaptive::lambda_mode_from_name(f.lambda_mode));
  adaptive::RngSpec rng;
  rng.seed = f.seed;
  const auto mode = f.samples ? adaptive::AdmissibilityMode::sampled(f.samples, rng) : adaptive::AdmissibilityMode::all();
  const auto r = adaptive::admissibility_check(relax, game, rate_from_flags(f.rate, f.rate_params), mode, f.tol);
  Json rep = {{"command", "admissible"},
              {"relaxation", r.relaxation},
              {"exhaustive", r.exhaustive},
              {"checked", r.margins.size()},
              {"worst_recursive", adaptive::json_number(r.worst_recursive)},
              {"worst_initial", adaptive::json_number(r.worst_initial)},
              {"worst_margin", adaptive::json_number(r.worst_margin)},
              {"worst_prefix", path_json(r.worst_prefix)},
              {"worst_kind", adaptive::condition_kind_name(r.worst_kind)},
              {"tolerance", r.tolerance},
              {"pass", r.pass}};
  adaptive::write_json_file(rep, f.report);
  std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.relaxation << ": worst margin "
            << adaptive::format_double(r.worst_margin) << " over " << r.margins.size() << " conditions\n";
  return r.pass ? 0 : 1;
}

struct ComplexityFlags {
  std::string mode = "exact", offset = "none", table, report = "lab_complexity.json";
  int depth = 8;
  std::size_t functions = 4, replicates = 10000;
  std::uint64_t seed = 0;
  double alpha = 1.0;
};

int cmd_complexity(const ComplexityFlags& f) {
  adaptive::Engine eng(f.seed);
  const auto table = f.table.empty() ? adaptive::FunctionTable::random(f.depth, f.functions, eng)
                                     : adaptive::function_table_from_json(adaptive::read_json_file(f.table));
  adaptive::OffsetForm form;
  if (f.offset == "none") form = adaptive::OffsetForm::none();
  else if (f.offset == "quadratic_alpha") form = adaptive::OffsetForm::quadratic(f.alpha);
  else if (f.offset == "multiscale_covering") form = adaptive::OffsetForm::multiscale_covering();
  else if (f.offset == "finite_class") form = adaptive::OffsetForm::finite_class();
  else throw std::invalid_argument("unknown offset form '" + f.offset + "' (known: none, quadratic_alpha, multiscale_covering, finite_class)");
  adaptive::RngSpec rng;
  rng.seed = f.seed;
  const bool exact = f.mode == "exact";
  if (!exact && f.mode != "mc") throw std::invalid_argument("mode must be exact or mc");
  const auto est = adaptive::offset_expectation(table, form, exact ? adaptive::EstimationMode::exact : adaptive::EstimationMode::monte_carlo,
                                                rng, f.replicates);
  Json rep = {{"command", "complexity"},
              {"offset", adaptive::offset_kind_name(form.kind)},
              {"depth", table.depth()},
              {"functions", table.num_functions()},
              {"exact", est.exact},
              {"samples", est.samples},
              {"value", est.value},
              {"std_error", est.std_error}};
  adaptive::write_json_file(rep, f.report);
  std::cout << adaptive::offset_kind_name(form.kind) << " offset expectation = " << adaptive::format_double(est.value);
  if (!est.exact) std::cout << " +/- " << adaptive::format_double(est.std_error);
  std::cout << "\n";
  return 0;
}

struct TailFlags {
  std::string kind = "pinelis", instance, thresholds, report = "lab_tails.json";
  std::size_t replicates = 0, functions = 4, dim = 3;
  int depth = 10;
  std::uint64_t seed = 0;
  double alpha = 1.0, gamma = 1.0;
};

adaptive::TailInstance random_instance(adaptive::TailKind kind, const TailFlags& f) {
  adaptive::Engine eng(f.seed);
  if (kind == adaptive::TailKind::pinelis) {
    std::vector<std::vector<double>> nodes(adaptive::tree_node_count(f.depth));
    for (auto& v : nodes) {
      v.resize(f.dim);
      double sq = 0.0;
      for (auto& x : v) {
        x = adaptive::standard_normal(eng);
        sq += x * x;
      }
      const double scale = adaptive::uniform01(eng) / std::sqrt(sq);
      for (auto& x : v) x *= scale;
    }
    return adaptive::PinelisInstance{adaptive::BinaryTree<std::vector<double>>(f.depth, std::move(nodes))};
  }
  auto table = adaptive::FunctionTable::random(f.depth, f.functions, eng);
  if (kind == adaptive::TailKind::chaining) return adaptive::ChainingInstance{std::move(table)};
  return adaptive::OffsetProcessInstance{std::move(table), f.alpha, f.gamma};
}

int cmd_tails(const TailFlags& f) {
  const auto kind = adaptive::tail_kind_from_name(f.kind);
  const auto inst = f.instance.empty() ? random_instance(kind, f)
                                       : adaptive::tail_instance_from_json(kind, adaptive::read_json_file(f.instance));
  adaptive::TailOptions opt;
  opt.thresholds = parse_list(f.thresholds);
  if (opt.thresholds.empty()) throw std::invalid_argument("validate-tails: --thresholds is empty");
  if (f.replicates) opt.replicates = f.replicates;
  opt.rng.seed = f.seed;
  const auto rep = adaptive::tail_validate(inst, opt);
  Json points = Json::array();
  for (const auto& p : rep.points) {
    points.push_back({{"threshold", p.threshold},
                      {"level", p.level},
                      {"empirical", p.empirical},
                      {"std_error", p.std_error},
                      {"bound", adaptive::json_number(p.bound)},
                      {"skipped", p.skipped},
                      {"note", p.note},
                      {"pass", p.pass}});
    std::cout << (p.skipped ? "SKIP" : p.pass ? "PASS" : "FAIL") << " threshold " << adaptive::format_double(p.threshold);
    if (!p.skipped) {
      std::cout << ": empirical " << adaptive::format_double(p.empirical) << " bound " << adaptive::format_double(p.bound);
    } else {
      std::cout << ": " << p.note;
    }
    std::cout << "\n";
  }
  Json out = {{"command", "validate-tails"},
              {"kind", adaptive::tail_kind_name(rep.kind)},
              {"depth", rep.depth},
              {"exact", rep.exact},
              {"samples", rep.samples},
              {"gamma_constant", rep.gamma_constant},
              {"notes", rep.notes},
              {"points", points},
              {"pass", rep.pass}};
  adaptive::write_json_file(out, f.report);
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive online-learning lab"};
  app.require_subcommand(1);
  int status = 0;

  RunFlags run_flags;
  for (const bool audit : {false, true}) {
    auto* sub = app.add_subcommand(audit ? "audit" : "run",
                                   audit ? "Run an experiment and check every slack" : "Run an experiment and emit records");
    sub->add_option("-c,--config", run_flags.config, "Experiment config (JSON)")->required();
    sub->add_option("--seed", run_flags.seed, "Override the config seed");
    sub->add_option("--csv", run_flags.csv, "CSV output path");
    sub->add_option("--json", run_flags.json, "JSON records path");
    sub->add_option("--report", run_flags.report, "JSON report path");
    if (audit) sub->add_option("--tolerance", run_flags.tolerance, "Allowed slack deficit per round");
    sub->callback([&, audit] { status = cmd_run(run_flags, audit); });
  }

  OracleFlags oracle_flags;
  auto* oracle = app.add_subcommand("oracle", "Offset minimax value and achievability verdict");
  oracle->add_option("--game", oracle_flags.game, "Game description (JSON)")->required();
  oracle->add_option("--rate", oracle_flags.rate, "Rate name");
  oracle->add_option("--rate-params", oracle_flags.rate_params, "Rate parameters (JSON object)");
  oracle->add_option("--tol", oracle_flags.tol, "Achievability tolerance");
  oracle->add_option("--budget", oracle_flags.budget, "Maximum number of outcome paths");
  oracle->add_flag("--no-refine", oracle_flags.no_refine, "Comparator grid only");
  oracle->add_option("--report", oracle_flags.report, "JSON report path");
  oracle->callback([&] { status = cmd_oracle(oracle_flags); });

  AdmissibleFlags adm_flags;
  auto* adm = app.add_subcommand("admissible", "Check a relaxation's initial and recursive conditions");
  adm->add_option("--game", adm_flags.game, "Game description (JSON)")->required();
  adm->add_option("--strategy", adm_flags.strategy, "Relaxation name");
  adm->add_option("--lambda-mode", adm_flags.lambda_mode, "optimized or fixed_inverse_sqrt_n");
  adm->add_option("--i-max", adm_flags.i_max, "Ladder size (default: from n and K)");
  adm->add_option("--rate", adm_flags.rate, "Rate for the initial condition");
  adm->add_option("--rate-params", adm_flags.rate_params, "Rate parameters (JSON object)");
  adm->add_option("--samples", adm_flags.samples, "Sampled prefixes (0: exhaustive)");
  adm->add_option("--seed", adm_flags.seed, "Seed for sampled mode");
  adm->add_option("--tol", adm_flags.tol, "Margin tolerance");
  adm->add_option("--report", adm_flags.report, "JSON report path");
  adm->callback([&] { status = cmd_admissible(adm_flags); });

  ComplexityFlags cx;
  auto* comp = app.add_subcommand("complexity", "Sequential Rademacher and offset expectations");
  comp->add_option("--mode", cx.mode, "exact or mc");
  comp->add_option("--depth", cx.depth, "Tree depth for a random class");
  comp->add_option("--functions", cx.functions, "Class size for a random class");
  comp->add_option("--table", cx.table, "Function table (JSON) instead of a random class");
  comp->add_option("--offset", cx.offset, "none, quadratic_alpha, multiscale_covering, finite_class");
  comp->add_option("--alpha", cx.alpha, "Quadratic offset alpha");
  comp->add_option("--replicates", cx.replicates, "Monte Carlo replicates");
  comp->add_option("--seed", cx.seed, "Seed");
  comp->add_option("--report", cx.report, "JSON report path");
  comp->callback([&] { status = cmd_complexity(cx); });

  TailFlags tf;
  auto* tails = app.add_subcommand("validate-tails", "Compare empirical tails with closed-form bounds");
  tails->add_option("--kind", tf.kind, "pinelis, chaining, offset_process")->required();
  tails->add_option("--instance", tf.instance, "Instance file (JSON); random when omitted");
  tails->add_option("--thresholds", tf.thresholds, "Comma-separated tau or theta grid")->required();
  tails->add_option("--replicates", tf.replicates, "Monte Carlo replicates (0: exact)");
  tails->add_option("--seed", tf.seed, "Seed");
  tails->add_option("--depth", tf.depth, "Depth of a random instance");
  tails->add_option("--functions", tf.functions, "Class size of a random instance");
  tails->add_option("--dim", tf.dim, "Dimension of a random pinelis instance");
  tails->add_option("--alpha", tf.alpha, "Offset alpha");
  tails->add_option("--gamma", tf.gamma, "Offset scale gamma");
  tails->add_option("--report", tf.report, "JSON report path");
  tails->callback([&] { status = cmd_tails(tf); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}
