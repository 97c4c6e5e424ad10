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

#ifndef ADAPTIVE_COMPLEXITY_COVERING_HPP_
#define ADAPTIVE_COMPLEXITY_COVERING_HPP_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adaptive/complexity/function_table.hpp"

namespace adaptive {

enum class CoverNorm { l2, linf };

// Exhaustive set-cover search is used up to this class size; greedy above.
inline constexpr std::size_t kExactCoverMaxClass = 12;

struct CoverResult {
  std::size_t size = 0;
  bool exact = true;  // false when the size is a greedy upper bound
};

// Sequential covers of a finite class on its tree, restricted to internal
// covers: the cover elements are trees g o z for g in G. A cover element may
// differ per sign path. Internal covers upper-bound the true covering numbers.
class CoverCalculator {
 public:
  explicit CoverCalculator(const FunctionTable& table)
      : m_(table.num_functions()), n_(table.depth()), paths_(std::size_t{1} << table.depth()) {
    if (table.depth() > 20 || m_ * m_ * paths_ > (std::size_t{1} << 26)) {
      throw std::invalid_argument("covering: class/tree too large for pairwise path distances");
    }
    sq_.assign(m_ * m_ * paths_, 0.0);
    mx_.assign(m_ * m_ * paths_, 0.0);
    std::vector<std::size_t> nodes(n_);
    for (std::uint64_t code = 0; code < paths_; ++code) {
      path_nodes(code, n_, nodes);
      for (std::size_t g = 0; g < m_; ++g) {
        for (std::size_t v = g + 1; v < m_; ++v) {
          double s = 0.0, mx = 0.0;
          for (int t = 0; t < n_; ++t) {
            const double d = table.value(g, nodes[t]) - table.value(v, nodes[t]);
            s += d * d;
            mx = std::max(mx, std::abs(d));
          }
          set(g, v, code, s, mx);
          set(v, g, code, s, mx);
        }
      }
    }
  }

  std::size_t num_functions() const { return m_; }
  int depth() const { return n_; }

  // Distance of g and v along one path under the cover condition's norm:
  // sqrt(sum_t (g - v)^2 / n) for l2, max_t |g - v| for linf.
  double path_distance(std::size_t g, std::size_t v, std::uint64_t code, CoverNorm norm) const {
    const std::size_t i = (g * m_ + v) * paths_ + code;
    return norm == CoverNorm::l2 ? std::sqrt(sq_[i] / n_) : mx_[i];
  }

  // All distinct positive path distances, sorted: the scales where the cover
  // size can change.
  std::vector<double> breakpoints(CoverNorm norm) const {
    std::vector<double> out;
    for (std::size_t g = 0; g < m_; ++g) {
      for (std::size_t v = g + 1; v < m_; ++v) {
        for (std::uint64_t c = 0; c < paths_; ++c) {
          const double d = path_distance(g, v, c, norm);
          if (d > 0.0) out.push_back(d);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  CoverResult cover(double alpha, CoverNorm norm) const {
    if (!(alpha > 0.0)) throw std::invalid_argument("covering_number: alpha must be > 0");
    const std::size_t words = (m_ * paths_ + 63) / 64;
    // coverage[v] marks the (g, path) pairs that v covers.
    std::vector<std::vector<std::uint64_t>> coverage(m_, std::vector<std::uint64_t>(words, 0));
    const double sq_thresh = static_cast<double>(n_) * alpha * alpha;
    for (std::size_t v = 0; v < m_; ++v) {
      for (std::size_t g = 0; g < m_; ++g) {
        for (std::uint64_t c = 0; c < paths_; ++c) {
          const std::size_t i = (g * m_ + v) * paths_ + c;
          const bool ok = norm == CoverNorm::l2 ? sq_[i] <= sq_thresh * (1 + 1e-12)
                                                : mx_[i] <= alpha * (1 + 1e-12);
          if (ok) {
            const std::size_t bit = g * paths_ + c;
            coverage[v][bit / 64] |= std::uint64_t{1} << (bit % 64);
          }
        }
      }
    }
    const std::size_t total_bits = m_ * paths_;
    auto full = [&](const std::vector<std::uint64_t>& acc) {
      std::size_t cnt = 0;
      for (auto w : acc) cnt += static_cast<std::size_t>(std::popcount(w));
      return cnt == total_bits;
    };
    if (m_ <= kExactCoverMaxClass) {
      for (std::size_t k = 1; k <= m_; ++k) {
        std::vector<std::vector<std::uint64_t>> stack(k + 1, std::vector<std::uint64_t>(words, 0));
        if (search(coverage, stack, 0, 0, k, full)) return {k, true};
      }
      return {m_, true};
    }
    // Greedy: repeatedly take the element covering the most uncovered pairs.
    std::vector<std::uint64_t> acc(words, 0);
    std::vector<bool> used(m_, false);
    std::size_t picked = 0;
    while (!full(acc)) {
      std::size_t best = 0, best_gain = 0;
      for (std::size_t v = 0; v < m_; ++v) {
        if (used[v]) continue;
        std::size_t gain = 0;
        for (std::size_t w = 0; w < words; ++w) {
          gain += static_cast<std::size_t>(std::popcount(coverage[v][w] & ~acc[w]));
        }
        if (gain > best_gain) best_gain = gain, best = v;
      }
      used[best] = true;
      for (std::size_t w = 0; w < words; ++w) acc[w] |= coverage[best][w];
      ++picked;
    }
    return {picked, false};
  }

 private:
  void set(std::size_t g, std::size_t v, std::uint64_t code, double s, double mx) {
    const std::size_t i = (g * m_ + v) * paths_ + code;
    sq_[i] = s;
    mx_[i] = mx;
  }

  template <class Full>
  bool search(const std::vector<std::vector<std::uint64_t>>& coverage,
              std::vector<std::vector<std::uint64_t>>& stack, std::size_t depth,
              std::size_t start, std::size_t k, const Full& full) const {
    if (depth == k) return full(stack[depth]);
    for (std::size_t v = start; v + (k - depth) <= m_; ++v) {
      auto& next = stack[depth + 1];
      for (std::size_t w = 0; w < next.size(); ++w) next[w] = stack[depth][w] | coverage[v][w];
      if (search(coverage, stack, depth + 1, v + 1, k, full)) return true;
    }
    return false;
  }

  std::size_t m_;
  int n_;
  std::size_t paths_;
  std::vector<double> sq_;  // (g, v, path) -> sum of squared differences
  std::vector<double> mx_;  // (g, v, path) -> max absolute difference
};

inline CoverResult covering_number(const FunctionTable& table, double alpha, CoverNorm norm) {
  return CoverCalculator(table).cover(alpha, norm);
}

// N(delta) as a nonincreasing step function: size steps[j].size on
// [steps[j].start, steps[j + 1].start), with steps[0].start = 0.
struct CoverStep {
  double start;
  std::size_t size;
};

// Exact covers only. The cover size can change only at a pairwise path
// distance, so its (at most |G|) jumps are located by bisection over the
// sorted distances.
inline std::vector<CoverStep> cover_steps(const CoverCalculator& calc, CoverNorm norm) {
  if (calc.num_functions() > kExactCoverMaxClass) {
    throw std::invalid_argument("cover_steps: class too large for exact covers");
  }
  const std::vector<double> b = calc.breakpoints(norm);
  std::vector<CoverStep> out;
  const std::size_t below = b.empty() ? 1 : calc.cover(0.5 * b.front(), norm).size;
  out.push_back({0.0, below});
  if (b.empty()) return out;
  std::vector<std::size_t> sizes(b.size(), 0);
  auto known = [&](std::size_t j) {
    if (!sizes[j]) sizes[j] = calc.cover(b[j], norm).size;
    return sizes[j];
  };
  auto split = [&](auto&& self, std::size_t lo, std::size_t hi) -> void {
    if (known(lo) == known(hi)) return;
    if (hi == lo + 1) {
      out.push_back({b[hi], known(hi)});
      return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    self(self, lo, mid);
    self(self, mid, hi);
  };
  if (known(0) != below) out.push_back({b[0], known(0)});
  split(split, 0, b.size() - 1);
  return out;
}

inline std::size_t step_size_at(const std::vector<CoverStep>& steps, double delta) {
  auto it = std::upper_bound(steps.begin(), steps.end(), delta,
                             [](double d, const CoverStep& s) { return d < s.start; });
  return std::prev(it)->size;
}

// log N_2(G, delta, .) as a function of the scale: either the power law
// delta^-p or the covers of a concrete finite class on its tree.
class CoveringProfile {
 public:
  enum class Mode { finite_class_exact, greedy, analytic_power_law };

  static CoveringProfile analytic(double p) {
    if (!(p > 0.0 && p < 2.0)) {
      throw std::invalid_argument("covering profile: exponent p must lie in (0, 2)");
    }
    CoveringProfile prof;
    prof.mode_ = Mode::analytic_power_law;
    prof.p_ = p;
    return prof;
  }

  static CoveringProfile from_table(const FunctionTable& table) {
    CoveringProfile prof;
    prof.state_ = std::make_shared<TableState>(table);
    prof.mode_ = table.num_functions() <= kExactCoverMaxClass ? Mode::finite_class_exact
                                                              : Mode::greedy;
    return prof;
  }

  Mode mode() const { return mode_; }
  double exponent() const { return p_; }

  double log_covering(double delta) const {
    if (mode_ == Mode::analytic_power_law) return std::pow(delta, -p_);
    return std::log(static_cast<double>(cover_size(delta)));
  }

  std::size_t cover_size(double delta) const {
    if (!state_) throw std::logic_error("covering profile: analytic profile has no cover sizes");
    if (mode_ == Mode::finite_class_exact) return step_size_at(steps(), delta);
    std::lock_guard<std::mutex> lock(state_->mu);
    auto it = state_->cache.find(delta);
    if (it != state_->cache.end()) return it->second;
    const std::size_t s = state_->calc.cover(delta, CoverNorm::l2).size;
    state_->cache.emplace(delta, s);
    return s;
  }

  // Exact covers only: log N_2 as a step function of the scale.
  const std::vector<CoverStep>& steps() const {
    if (mode_ != Mode::finite_class_exact) {
      throw std::logic_error("covering profile: step form needs exact covers");
    }
    std::lock_guard<std::mutex> lock(state_->mu);
    if (state_->steps.empty()) state_->steps = cover_steps(state_->calc, CoverNorm::l2);
    return state_->steps;
  }

 private:
  struct TableState {
    explicit TableState(const FunctionTable& t) : calc(t) {}
    CoverCalculator calc;
    std::mutex mu;
    std::map<double, std::size_t> cache;
    std::vector<CoverStep> steps;
  };

  Mode mode_ = Mode::analytic_power_law;
  double p_ = 0.0;
  std::shared_ptr<TableState> state_;
};

inline constexpr int kDudleyGridPoints = 64;

// Integral of sqrt(n log N_2(delta)) over [1/n, gamma]; zero when gamma <= 1/n.
// Exact covers give a step function that is integrated piece by piece; other
// profiles use the trapezoid rule on a 64-point geometric grid.
inline double dudley_integral(const CoveringProfile& profile, double gamma, int n) {
  if (n < 1) throw std::invalid_argument("dudley_integral: n must be >= 1");
  const double lo = 1.0 / n;
  if (!(gamma > lo)) return 0.0;
  if (profile.mode() == CoveringProfile::Mode::finite_class_exact) {
    const auto& st = profile.steps();
    double total = 0.0;
    for (std::size_t j = 0; j < st.size(); ++j) {
      const double a = std::max(lo, st[j].start);
      const double b = j + 1 < st.size() ? std::min(gamma, st[j + 1].start) : gamma;
      if (b > a) total += (b - a) * std::sqrt(n * std::log(static_cast<double>(st[j].size)));
    }
    return total;
  }
  const double ratio = gamma / lo;
  double prev_x = lo;
  double prev_f = std::sqrt(n * std::max(0.0, profile.log_covering(lo)));
  double total = 0.0;
  for (int k = 1; k < kDudleyGridPoints; ++k) {
    const double x = k + 1 == kDudleyGridPoints
                         ? gamma
                         : lo * std::pow(ratio, static_cast<double>(k) / (kDudleyGridPoints - 1));
    const double f = std::sqrt(n * std::max(0.0, profile.log_covering(x)));
    total += 0.5 * (f + prev_f) * (x - prev_x);
    prev_x = x;
    prev_f = f;
  }
  return total;
}

}  // namespace adaptive

#endif  // ADAPTIVE_COMPLEXITY_COVERING_HPP_
