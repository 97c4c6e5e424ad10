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


// Validators for one-sided tail bounds of martingale and Rademacher-type
// processes on trees. Each compares an empirical upper-tail probability with
// the closed-form bound at a grid of thresholds.

#ifndef ADAPTIVE_PROBTOOLS_TAILS_HPP_
#define ADAPTIVE_PROBTOOLS_TAILS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adaptive/complexity/covering.hpp"
#include "adaptive/complexity/function_table.hpp"
#include "adaptive/complexity/rademacher.hpp"
#include "adaptive/core/rng.hpp"
#include "adaptive/core/tree.hpp"

namespace adaptive {

enum class TailKind { pinelis, chaining, offset_process };

inline std::string_view tail_kind_name(TailKind k) {
  switch (k) {
    case TailKind::pinelis: return "pinelis";
    case TailKind::chaining: return "chaining";
    case TailKind::offset_process: return "offset_process";
  }
  return "?";
}

inline TailKind tail_kind_from_name(std::string_view s) {
  if (s == "pinelis") return TailKind::pinelis;
  if (s == "chaining") return TailKind::chaining;
  if (s == "offset_process") return TailKind::offset_process;
  throw std::invalid_argument("unknown tail kind '" + std::string(s) +
                              "' (known: pinelis, chaining, offset_process)");
}

// Vector-valued tree in the Euclidean unit ball (2-smooth with D = 1).
struct PinelisInstance {
  BinaryTree<std::vector<double>> tree;
  double smoothness = 1.0;
};

// Thresholds are theta values; the event is sup_g |sum eps_t g| > n inf_alpha{...}.
struct ChainingInstance {
  FunctionTable table;
};

// Thresholds are tau values for the offset process at scale gamma and offset alpha.
struct OffsetProcessInstance {
  FunctionTable table;
  double alpha = 1.0;
  double gamma = 1.0;
};

using TailInstance = std::variant<PinelisInstance, ChainingInstance, OffsetProcessInstance>;

struct TailOptions {
  std::vector<double> thresholds;
  std::optional<std::size_t> replicates;  // empty: exact enumeration
  RngSpec rng;
};

struct TailPoint {
  double threshold = 0.0;   // tau or theta
  double level = 0.0;       // value the statistic is compared with
  double empirical = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool skipped = false;
  std::string note;
  bool pass = true;
};

struct TailReport {
  TailKind kind = TailKind::pinelis;
  int depth = 0;
  bool exact = true;
  std::size_t samples = 0;
  double gamma_constant = 0.0;  // Gamma of the bound, when it has one
  std::vector<TailPoint> points;
  std::vector<std::string> notes;
  bool pass = true;
};

namespace detail {

// Evaluates a per-path statistic on every sign path (exact) or on sampled
// paths (replicate r uses engine seed + r).
inline std::vector<double> path_statistics(int n, const TailOptions& opt,
                                           const std::function<double(std::uint64_t)>& stat,
                                           bool& exact) {
  std::vector<double> out;
  exact = !opt.replicates.has_value();
  if (exact) {
    if (n > kExactEnumerationMaxDepth) {
      throw std::invalid_argument("tail_validate: exact enumeration is capped at depth " +
                                  std::to_string(kExactEnumerationMaxDepth) +
                                  "; pass a replicate count");
    }
    const std::uint64_t paths = std::uint64_t{1} << n;
    out.reserve(paths);
    for (std::uint64_t code = 0; code < paths; ++code) out.push_back(stat(code));
    return out;
  }
  if (*opt.replicates < 100) throw std::invalid_argument("tail_validate: needs >= 100 replicates");
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  out.reserve(*opt.replicates);
  for (std::size_t r = 0; r < *opt.replicates; ++r) {
    Engine eng = make_engine(opt.rng, r);
    out.push_back(stat(eng() & mask));
  }
  return out;
}

inline void finish_point(TailPoint& p, const std::vector<double>& stats, bool exact, bool strict) {
  std::size_t hits = 0;
  for (double v : stats) hits += strict ? (v > p.level) : (v >= p.level);
  const double m = static_cast<double>(stats.size());
  p.empirical = static_cast<double>(hits) / m;
  p.std_error = exact ? 0.0 : std::sqrt(p.empirical * (1.0 - p.empirical) / m);
  p.pass = p.empirical <= p.bound + 4.0 * p.std_error;
}

inline double step_integral(const std::vector<CoverStep>& steps, double a, double b,
                            const std::function<double(std::size_t)>& f) {
  double total = 0.0;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const double lo = std::max(a, steps[j].start);
    const double hi = j + 1 < steps.size() ? std::min(b, steps[j + 1].start) : b;
    if (hi > lo) total += (hi - lo) * f(steps[j].size);
  }
  return total;
}

}  // namespace detail

// P(|sum_t eps_t z_t(eps)| >= tau) <= 2 exp(-tau^2 / (8 D^2 n)) whenever n > tau / (4 D^2).
inline TailReport validate_pinelis(const PinelisInstance& inst, const TailOptions& opt) {
  const auto& tree = inst.tree;
  const int n = tree.depth();
  const double d2 = inst.smoothness * inst.smoothness;
  if (!(inst.smoothness > 0.0)) throw std::invalid_argument("pinelis: D must be > 0");
  const std::size_t dim = tree.node(0).size();
  for (const auto& v : tree.nodes()) {
    if (v.size() != dim) throw std::invalid_argument("pinelis: node vectors differ in dimension");
    double sq = 0.0;
    for (double x : v) sq += x * x;
    if (std::sqrt(sq) > 1.0 + 1e-12) throw std::domain_error("pinelis: node outside the unit ball");
  }
  std::vector<std::size_t> nodes(n);
  std::vector<double> acc(dim);
  auto stat = [&](std::uint64_t code) {
    path_nodes(code, n, nodes);
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int t = 0; t < n; ++t) {
      const double eps = path_sign(code, t);
      const auto& z = tree.node(nodes[t]);
      for (std::size_t j = 0; j < dim; ++j) acc[j] += eps * z[j];
    }
    double sq = 0.0;
    for (double x : acc) sq += x * x;
    return std::sqrt(sq);
  };
  TailReport rep;
  rep.kind = TailKind::pinelis;
  rep.depth = n;
  const auto stats = detail::path_statistics(n, opt, stat, rep.exact);
  rep.samples = stats.size();
  for (double tau : opt.thresholds) {
    TailPoint p;
    p.threshold = tau;
    p.level = tau;
    if (!(n > tau / (4.0 * d2))) {
      p.skipped = true;
      p.note = "requires n > tau / (4 D^2)";
    } else {
      p.bound = 2.0 * std::exp(-tau * tau / (8.0 * d2 * n));
      detail::finish_point(p, stats, rep.exact, false);
    }
    rep.points.push_back(p);
  }
  for (const auto& p : rep.points) rep.pass = rep.pass && p.pass;
  return rep;
}

// P(sup_g |sum_t eps_t g(z_t)| > n inf_alpha {4 alpha + 6 theta int_alpha^1 sqrt(log N_inf(delta)) d delta})
//   <= 2 Gamma exp(-n theta^2 / 4)   for theta > sqrt(12 / n),
// with covers taken on the given tree and Gamma the truncated sum of 1 / N_inf(2^-j).
inline TailReport validate_chaining(const ChainingInstance& inst, const TailOptions& opt) {
  const auto& table = inst.table;
  const int n = table.depth();
  const CoverCalculator calc(table);
  const auto steps = cover_steps(calc, CoverNorm::linf);
  TailReport rep;
  rep.kind = TailKind::chaining;
  rep.depth = n;

  const int j_max = static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))) + 4;
  double gamma = 0.0, last = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    last = 1.0 / static_cast<double>(step_size_at(steps, std::ldexp(1.0, -j)));
    gamma += last;
  }
  // Tail of the series bounded by its last term.
  gamma += last;
  rep.gamma_constant = gamma;
  const std::size_t n_half = step_size_at(steps, 0.5);
  const std::size_t n_tiny = step_size_at(steps, std::ldexp(1.0, -j_max));
  if (n_tiny == step_size_at(steps, std::ldexp(1.0, -j_max + 1)) && n_tiny > 0) {
    rep.notes.push_back("cover sizes saturate below 2^-J: the infinite series diverges for a finite class; Gamma uses the truncated sum");
  }
  if (n_half < 4) rep.notes.push_back("N_inf(1/2) < 4 on this tree");

  auto sqrt_log = [](std::size_t size) { return std::sqrt(std::log(static_cast<double>(size))); };
  // The objective is linear in alpha between cover breakpoints, so the
  // infimum is attained at 0+, a breakpoint, or alpha = 1.
  std::vector<double> alphas{0.0, 1.0};
  for (const auto& s : steps) {
    if (s.start > 0.0 && s.start < 1.0) alphas.push_back(s.start);
  }
  std::vector<std::size_t> nodes(n);
  auto stat = [&](std::uint64_t code) {
    path_nodes(code, n, nodes);
    double best = 0.0;
    for (std::size_t g = 0; g < table.num_functions(); ++g) {
      double sum = 0.0;
      for (int t = 0; t < n; ++t) sum += path_sign(code, t) * table.value(g, nodes[t]);
      best = std::max(best, std::abs(sum));
    }
    return best;
  };
  const auto stats = detail::path_statistics(n, opt, stat, rep.exact);
  rep.samples = stats.size();
  for (double theta : opt.thresholds) {
    TailPoint p;
    p.threshold = theta;
    if (!(theta > std::sqrt(12.0 / n))) {
      p.skipped = true;
      p.note = "requires theta > sqrt(12 / n)";
      rep.points.push_back(p);
      continue;
    }
    double inf = kInf;
    for (double a : alphas) {
      inf = std::min(inf, 4.0 * a + 6.0 * theta * detail::step_integral(steps, a, 1.0, sqrt_log));
    }
    p.level = n * inf;
    p.bound = 2.0 * gamma * std::exp(-n * theta * theta / 4.0);
    detail::finish_point(p, stats, rep.exact, true);
    rep.points.push_back(p);
  }
  for (const auto& p : rep.points) rep.pass = rep.pass && p.pass;
  return rep;
}

// P(sup_g sum_t (eps_t g - 2 alpha g^2) - log N_2(gamma) / alpha - 12 sqrt(2) I(gamma) - 1 > tau)
//   <= Gamma exp(-tau^2 / (2 sigma^2)) + exp(-alpha tau / 2),
// I the entropy integral from 1/n to gamma, sigma = 12 I(gamma), and
// Gamma = sum_{j=1}^{log2(2 n gamma)} N_2(2^-j gamma)^-2.
inline TailReport validate_offset_process(const OffsetProcessInstance& inst,
                                          const TailOptions& opt) {
  const auto& table = inst.table;
  const int n = table.depth();
  if (!(inst.alpha > 0.0)) throw std::invalid_argument("offset_process: alpha must be > 0");
  if (!(inst.gamma >= 1.0 / n)) throw std::invalid_argument("offset_process: gamma must be >= 1/n");
  const auto profile = CoveringProfile::from_table(table);
  const double integral = dudley_integral(profile, inst.gamma, n);
  const double sigma = 12.0 * integral;
  const double shift = profile.log_covering(inst.gamma) / inst.alpha +
                       12.0 * std::numbers::sqrt2 * integral + 1.0;
  const int j_max = static_cast<int>(std::floor(std::log2(2.0 * n * inst.gamma) + 1e-12));
  double gamma_const = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    const double size = static_cast<double>(profile.cover_size(std::ldexp(inst.gamma, -j)));
    gamma_const += 1.0 / (size * size);
  }
  TailReport rep;
  rep.kind = TailKind::offset_process;
  rep.depth = n;
  rep.gamma_constant = gamma_const;
  if (profile.mode() != CoveringProfile::Mode::finite_class_exact) {
    rep.notes.push_back("greedy covers: cover sizes are upper bounds");
  }
  PathSums sums;
  std::vector<std::size_t> scratch;
  auto stat = [&](std::uint64_t code) {
    path_sums(table, code, sums, scratch);
    double best = kNegInf;
    for (std::size_t g = 0; g < sums.signed_sum.size(); ++g) {
      best = std::max(best, sums.signed_sum[g] - 2.0 * inst.alpha * sums.square_sum[g]);
    }
    return best - shift;
  };
  const auto stats = detail::path_statistics(n, opt, stat, rep.exact);
  rep.samples = stats.size();
  for (double tau : opt.thresholds) {
    TailPoint p;
    p.threshold = tau;
    p.level = tau;
    if (!(tau > 0.0)) {
      p.skipped = true;
      p.note = "requires tau > 0";
      rep.points.push_back(p);
      continue;
    }
    const double gauss = sigma > 0.0 ? gamma_const * std::exp(-tau * tau / (2.0 * sigma * sigma)) : 0.0;
    p.bound = gauss + std::exp(-inst.alpha * tau / 2.0);
    detail::finish_point(p, stats, rep.exact, true);
    rep.points.push_back(p);
  }
  for (const auto& p : rep.points) rep.pass = rep.pass && p.pass;
  return rep;
}

inline TailReport tail_validate(const TailInstance& instance, const TailOptions& opt) {
  return std::visit(
      [&](const auto& inst) -> TailReport {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, PinelisInstance>) return validate_pinelis(inst, opt);
        else if constexpr (std::is_same_v<T, ChainingInstance>) return validate_chaining(inst, opt);
        else return validate_offset_process(inst, opt);
      },
      instance);
}

}  // namespace adaptive

#endif  // ADAPTIVE_PROBTOOLS_TAILS_HPP_
