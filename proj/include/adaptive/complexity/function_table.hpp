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

#ifndef ADAPTIVE_COMPLEXITY_FUNCTION_TABLE_HPP_
#define ADAPTIVE_COMPLEXITY_FUNCTION_TABLE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adaptive/core/rng.hpp"
#include "adaptive/core/tree.hpp"

namespace adaptive {

// Values g(z_node) of a finite class G on every node of a depth-n tree.
class FunctionTable {
 public:
  FunctionTable(int depth, std::vector<std::vector<double>> rows, double bound = 1.0)
      : depth_(depth), bound_(bound) {
    const std::size_t nodes = tree_node_count(depth_);
    if (rows.empty()) throw std::invalid_argument("function table: class is empty");
    if (!(bound_ > 0.0)) throw std::invalid_argument("function table: bound must be > 0");
    num_functions_ = rows.size();
    values_.reserve(num_functions_ * nodes);
    for (const auto& r : rows) {
      if (r.size() != nodes) {
        throw std::invalid_argument("function table: each row needs 2^depth - 1 node values");
      }
      for (double v : r) {
        if (!std::isfinite(v) || std::abs(v) > bound_ + 1e-12) {
          throw std::invalid_argument("function table: value " + std::to_string(v) +
                                      " exceeds range bound");
        }
        values_.push_back(v);
      }
    }
  }

  // |G| functions with i.i.d. uniform values in [-bound, bound] on every node.
  static FunctionTable random(int depth, std::size_t num_functions, Engine& eng,
                              double bound = 1.0) {
    const std::size_t nodes = tree_node_count(depth);
    std::vector<std::vector<double>> rows(num_functions, std::vector<double>(nodes));
    for (auto& r : rows) {
      for (auto& v : r) v = bound * (2.0 * uniform01(eng) - 1.0);
    }
    return FunctionTable(depth, std::move(rows), bound);
  }

  int depth() const { return depth_; }
  std::size_t num_functions() const { return num_functions_; }
  std::size_t num_nodes() const { return values_.size() / num_functions_; }
  double bound() const { return bound_; }

  double value(std::size_t g, std::size_t node) const { return values_[g * num_nodes() + node]; }
  std::span<const double> row(std::size_t g) const {
    return std::span<const double>(values_).subspan(g * num_nodes(), num_nodes());
  }

  // The same class with one more function appended.
  FunctionTable with_function(std::vector<double> extra) const {
    std::vector<std::vector<double>> rows;
    for (std::size_t g = 0; g < num_functions_; ++g) {
      rows.emplace_back(row(g).begin(), row(g).end());
    }
    rows.push_back(std::move(extra));
    return FunctionTable(depth_, std::move(rows), bound_);
  }

 private:
  int depth_;
  double bound_;
  std::size_t num_functions_ = 0;
  std::vector<double> values_;  // row-major |G| x nodes
};

// Per-function sums along one sign path: S = sum_t eps_t g(z_t), Q = sum_t g(z_t)^2.
struct PathSums {
  std::vector<double> signed_sum;
  std::vector<double> square_sum;
};

inline void path_sums(const FunctionTable& table, std::uint64_t code, PathSums& out,
                      std::vector<std::size_t>& scratch) {
  const int n = table.depth();
  const std::size_t m = table.num_functions();
  scratch.resize(n);
  path_nodes(code, n, scratch);
  out.signed_sum.assign(m, 0.0);
  out.square_sum.assign(m, 0.0);
  for (std::size_t g = 0; g < m; ++g) {
    double s = 0.0, q = 0.0;
    for (int t = 0; t < n; ++t) {
      const double v = table.value(g, scratch[t]);
      s += path_sign(code, t) * v;
      q += v * v;
    }
    out.signed_sum[g] = s;
    out.square_sum[g] = q;
  }
}

}  // namespace adaptive

#endif  // ADAPTIVE_COMPLEXITY_FUNCTION_TABLE_HPP_
