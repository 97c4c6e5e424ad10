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

#ifndef ADAPTIVE_CORE_LADDER_HPP_
#define ADAPTIVE_CORE_LADDER_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace adaptive {

// Complexity radii R_i = 2^(i-1), i = 1..i_max.
class RadiusLadder {
 public:
  explicit RadiusLadder(int i_max) : i_max_(i_max) {
    if (i_max_ < 1 || i_max_ > 60) throw std::invalid_argument("ladder: i_max must be in [1, 60]");
  }

  // Rungs past this point carry a penalty above the largest possible regret n.
  static int default_i_max(int horizon, std::size_t num_experts) {
    const double k = static_cast<double>(num_experts);
    const double span = static_cast<double>(horizon) * std::log(k) + 1.0;
    return static_cast<int>(std::ceil(std::log2(span))) + 1;
  }

  int size() const { return i_max_; }

  // 0-based rung index.
  double radius(int i) const {
    if (i < 0 || i >= i_max_) throw std::out_of_range("ladder: rung out of range");
    return std::ldexp(1.0, i);
  }

  std::vector<double> radii() const {
    std::vector<double> r(i_max_);
    for (int i = 0; i < i_max_; ++i) r[i] = std::ldexp(1.0, i);
    return r;
  }

 private:
  int i_max_;
};

}  // namespace adaptive

#endif  // ADAPTIVE_CORE_LADDER_HPP_
