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


// CSV and JSON emission of audit records, and JSON read-back.

#ifndef ADAPTIVE_HARNESS_EMIT_HPP_
#define ADAPTIVE_HARNESS_EMIT_HPP_

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adaptive/harness/audit.hpp"
#include "adaptive/harness/environments.hpp"

namespace adaptive {

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// JSON has no non-finite numbers; they travel as strings.
inline Json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

inline double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw std::invalid_argument("records: expected a number, got '" + s + "'");
}

// "out/run.csv" -> "out/run_rounds.csv".
inline std::string rounds_csv_path(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return has_ext ? path.substr(0, dot) + "_rounds" + path.substr(dot) : path + "_rounds";
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

inline void close_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace detail

// Comparator table at `path`, per-round losses next to it.
inline void write_records_csv(const std::vector<AuditRecord>& records, const std::string& path) {
  auto main = detail::open_output(path);
  main << "replicate,rate_name,comparator_id,regret,rate,slack\n";
  for (const auto& r : records) {
    for (const auto& ra : r.rates) {
      for (const auto& row : ra.rows) {
        main << r.replicate << ',' << ra.rate << ',' << row.id << ',' << format_double(row.regret) << ','
             << format_double(row.rate) << ',' << format_double(row.slack) << '\n';
      }
    }
  }
  detail::close_output(main, path);
  const std::string rpath = rounds_csv_path(path);
  auto rounds = detail::open_output(rpath);
  rounds << "replicate,round,loss\n";
  for (const auto& r : records) {
    for (std::size_t t = 0; t < r.round_losses.size(); ++t) {
      rounds << r.replicate << ',' << t + 1 << ',' << format_double(r.round_losses[t]) << '\n';
    }
  }
  detail::close_output(rounds, rpath);
}

inline Json record_to_json(const AuditRecord& r) {
  Json rates = Json::array();
  for (const auto& ra : r.rates) {
    Json rows = Json::array();
    for (const auto& row : ra.rows) {
      rows.push_back({{"comparator_id", row.id},
                      {"loss", json_number(row.loss)},
                      {"regret", json_number(row.regret)},
                      {"rate", json_number(row.rate)},
                      {"slack", json_number(row.slack)}});
    }
    rates.push_back({{"rate", ra.rate}, {"min_slack", json_number(ra.min_slack)}, {"argmin", ra.argmin}, {"rows", rows}});
  }
  Json losses = Json::array();
  for (double l : r.round_losses) losses.push_back(json_number(l));
  return {{"replicate", r.replicate},
          {"environment", r.environment},
          {"strategy", r.strategy},
          {"experts", r.experts},
          {"horizon", r.horizon},
          {"sampled", r.sampled},
          {"round_losses", losses},
          {"learner_loss", json_number(r.learner_loss)},
          {"certificate", json_number(r.certificate)},
          {"rates", rates},
          {"min_slack", json_number(r.min_slack)},
          {"argmin_rate", r.argmin_rate},
          {"argmin_comparator", r.argmin_comparator},
          {"notes", r.notes}};
}

inline AuditRecord record_from_json(const Json& j) {
  AuditRecord r;
  r.replicate = j.at("replicate").get<std::size_t>();
  r.environment = j.at("environment").get<std::string>();
  r.strategy = j.at("strategy").get<std::string>();
  r.experts = j.at("experts").get<std::size_t>();
  r.horizon = j.at("horizon").get<int>();
  r.sampled = j.at("sampled").get<bool>();
  for (const auto& l : j.at("round_losses")) r.round_losses.push_back(number_from_json(l));
  r.learner_loss = number_from_json(j.at("learner_loss"));
  r.certificate = number_from_json(j.at("certificate"));
  for (const auto& ja : j.at("rates")) {
    RateAudit ra;
    ra.rate = ja.at("rate").get<std::string>();
    ra.min_slack = number_from_json(ja.at("min_slack"));
    ra.argmin = ja.at("argmin").get<std::string>();
    for (const auto& jr : ja.at("rows")) {
      ra.rows.push_back({jr.at("comparator_id").get<std::string>(), number_from_json(jr.at("loss")),
                         number_from_json(jr.at("regret")), number_from_json(jr.at("rate")),
                         number_from_json(jr.at("slack"))});
    }
    r.rates.push_back(std::move(ra));
  }
  r.min_slack = number_from_json(j.at("min_slack"));
  r.argmin_rate = j.at("argmin_rate").get<std::string>();
  r.argmin_comparator = j.at("argmin_comparator").get<std::string>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

inline Json records_to_json(const std::vector<AuditRecord>& records, const Json& metadata = Json::object()) {
  Json recs = Json::array();
  for (const auto& r : records) recs.push_back(record_to_json(r));
  return {{"lab_version", kLabVersionString}, {"metadata", metadata}, {"records", recs}};
}

inline void write_json_file(const Json& doc, const std::string& path) {
  auto out = detail::open_output(path);
  out << doc.dump(2) << '\n';
  detail::close_output(out, path);
}

inline void write_records_json(const std::vector<AuditRecord>& records, const std::string& path,
                               const Json& metadata = Json::object()) {
  write_json_file(records_to_json(records, metadata), path);
}

inline std::vector<AuditRecord> read_records_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  const Json doc = Json::parse(in);
  std::vector<AuditRecord> out;
  for (const auto& j : doc.at("records")) out.push_back(record_from_json(j));
  return out;
}

enum class EmitFormat { csv, json };

inline EmitFormat emit_format_from_name(std::string_view s) {
  if (s == "csv") return EmitFormat::csv;
  if (s == "json") return EmitFormat::json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (known: csv, json)");
}

inline void emit_results(const std::vector<AuditRecord>& records, EmitFormat format, const std::string& path,
                         const Json& metadata = Json::object()) {
  if (format == EmitFormat::csv) write_records_csv(records, path);
  else write_records_json(records, path, metadata);
}

}  // namespace adaptive

#endif  // ADAPTIVE_HARNESS_EMIT_HPP_
