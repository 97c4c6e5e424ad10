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

#ifndef ADAPTIVE_COMPLEXITY_RADEMACHER_HPP_
#define ADAPTIVE_COMPLEXITY_RADEMACHER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptive/complexity/covering.hpp"
#include "adaptive/complexity/function_table.hpp"
#include "adaptive/core/rng.hpp"

namespace adaptive {

inline constexpr int kExactEnumerationMaxDepth = 12;

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // zero for exact enumeration
  std::size_t samples = 0;
  bool exact = true;
};

enum class EstimationMode { exact, monte_carlo };

// Penalty subtracted from sum_t eps_t g(z_t(eps)) inside the supremum.
struct OffsetForm {
  enum class Kind { none, quadratic_alpha, multiscale_covering, finite_class, custom_penalty };

  Kind kind = Kind::none;
  double alpha = 0.0;                      // quadratic_alpha: penalty 2 alpha sum g^2
  std::optional<CoveringProfile> profile;  // multiscale_covering; defaults to the table's own covers
  std::optional<std::size_t> class_size;   // finite_class; defaults to |G|
  // custom_penalty: penalty(sum_t g^2, n).
  std::function<double(double, int)> penalty;

  static OffsetForm none() { return {}; }
  static OffsetForm quadratic(double alpha) {
    OffsetForm f;
    f.kind = Kind::quadratic_alpha;
    f.alpha = alpha;
    return f;
  }
  static OffsetForm multiscale_covering() {
    OffsetForm f;
    f.kind = Kind::multiscale_covering;
    return f;
  }
  static OffsetForm finite_class() {
    OffsetForm f;
    f.kind = Kind::finite_class;
    return f;
  }
  static OffsetForm custom(std::function<double(double, int)> pen) {
    OffsetForm f;
    f.kind = Kind::custom_penalty;
    f.penalty = std::move(pen);
    return f;
  }
};

inline const char* offset_kind_name(OffsetForm::Kind k) {
  switch (k) {
    case OffsetForm::Kind::none: return "none";
    case OffsetForm::Kind::quadratic_alpha: return "quadratic_alpha";
    case OffsetForm::Kind::multiscale_covering: return "multiscale_covering";
    case OffsetForm::Kind::finite_class: return "finite_class";
    case OffsetForm::Kind::custom_penalty: return "custom_penalty";
  }
  return "?";
}

// Dyadic scales {2^j / n : j = 0..ceil(log2(2n))}.
inline std::vector<double> dyadic_gamma_grid(int n) {
  std::vector<double> out;
  const int jmax = static_cast<int>(std::ceil(std::log2(2.0 * n)));
  for (int j = 0; j <= jmax; ++j) out.push_back(std::ldexp(1.0, j) / n);
  return out;
}

// Penalty of the finite-class small-loss offset: 2 log(log N Q + e) sqrt(32 (log N Q + e)).
inline double finite_class_offset_penalty(double sum_sq, std::size_t class_size) {
  const double a = std::log(static_cast<double>(class_size)) * sum_sq + std::numbers::e;
  return 2.0 * std::log(a) * std::sqrt(32.0 * a);
}

// Evaluates sup_g {S_g - penalty_g} for one path given the per-function sums.
class OffsetObjective {
 public:
  OffsetObjective(const FunctionTable& table, const OffsetForm& form)
      : form_(form), n_(table.depth()), class_size_(table.num_functions()) {
    switch (form_.kind) {
      case OffsetForm::Kind::none:
        break;
      case OffsetForm::Kind::quadratic_alpha:
        if (!(form_.alpha > 0.0)) throw std::invalid_argument("offset: quadratic_alpha needs alpha > 0");
        break;
      case OffsetForm::Kind::finite_class:
        if (form_.class_size) class_size_ = *form_.class_size;
        if (class_size_ < 1) throw std::invalid_argument("offset: finite_class needs N >= 1");
        break;
      case OffsetForm::Kind::custom_penalty:
        if (!form_.penalty) throw std::invalid_argument("offset: custom_penalty needs a penalty");
        break;
      case OffsetForm::Kind::multiscale_covering: {
        const CoveringProfile prof = form_.profile ? *form_.profile : CoveringProfile::from_table(table);
        const double logn = std::log(static_cast<double>(n_));
        for (double gamma : dyadic_gamma_grid(n_)) {
          const double log_cover = std::max(0.0, prof.log_covering(gamma / 2.0));
          scale_coef_.push_back(4.0 * std::sqrt(2.0 * logn * log_cover));
          scale_const_.push_back(24.0 * std::numbers::sqrt2 * logn * dudley_integral(prof, gamma, n_));
        }
        break;
      }
    }
  }

  double operator()(const PathSums& s) const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < s.signed_sum.size(); ++g) {
      best = std::max(best, s.signed_sum[g] - penalty(s.square_sum[g]));
    }
    return best;
  }

 private:
  double penalty(double q) const {
    switch (form_.kind) {
      case OffsetForm::Kind::none: return 0.0;
      case OffsetForm::Kind::quadratic_alpha: return 2.0 * form_.alpha * q;
      case OffsetForm::Kind::finite_class: return finite_class_offset_penalty(q, class_size_);
      case OffsetForm::Kind::custom_penalty: return form_.penalty(q, n_);
      case OffsetForm::Kind::multiscale_covering: {
        // The supremum over gamma picks the smallest penalty.
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < scale_coef_.size(); ++j) {
          best = std::min(best, scale_coef_[j] * std::sqrt(q + 1.0) + scale_const_[j]);
        }
        return best;
      }
    }
    return 0.0;
  }

  OffsetForm form_;
  int n_;
  std::size_t class_size_;
  std::vector<double> scale_coef_;
  std::vector<double> scale_const_;
};

// E_eps sup_g {sum_t eps_t g(z_t(eps)) - penalty}. Exact mode averages over all
// 2^n sign paths; Monte Carlo draws replicate r's path from engine seed + r.
inline Estimate offset_expectation(const FunctionTable& table, const OffsetForm& form,
                                   EstimationMode mode, const RngSpec& rng = {},
                                   std::size_t replicates = 0) {
  const OffsetObjective objective(table, form);
  const int n = table.depth();
  PathSums sums;
  std::vector<std::size_t> scratch;
  if (mode == EstimationMode::exact) {
    if (n > kExactEnumerationMaxDepth) {
      throw std::invalid_argument("exact enumeration is capped at depth " +
                                  std::to_string(kExactEnumerationMaxDepth) +
                                  "; use the Monte Carlo estimator");
    }
    const std::uint64_t paths = std::uint64_t{1} << n;
    double total = 0.0;
    for (std::uint64_t code = 0; code < paths; ++code) {
      path_sums(table, code, sums, scratch);
      total += objective(sums);
    }
    return {total / static_cast<double>(paths), 0.0, paths, true};
  }
  if (replicates < 100) throw std::invalid_argument("Monte Carlo estimation needs >= 100 replicates");
  const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  double mean = 0.0, m2 = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    Engine eng = make_engine(rng, r);
    path_sums(table, eng() & mask, sums, scratch);
    const double x = objective(sums);
    const double delta = x - mean;
    mean += delta / static_cast<double>(r + 1);
    m2 += delta * (x - mean);
  }
  const double var = replicates > 1 ? m2 / static_cast<double>(replicates - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(replicates)), replicates, false};
}

// Rad_n(G, z) = E_eps sup_g sum_t eps_t g(z_t(eps)), by full enumeration.
inline double seq_rademacher_exact(const FunctionTable& table) {
  return offset_expectation(table, OffsetForm::none(), EstimationMode::exact).value;
}

inline Estimate seq_rademacher_mc(const FunctionTable& table, std::size_t replicates,
                                  const RngSpec& rng) {
  return offset_expectation(table, OffsetForm::none(), EstimationMode::monte_carlo, rng,
                            replicates);
}

}  // namespace adaptive

#endif  // ADAPTIVE_COMPLEXITY_RADEMACHER_HPP_
