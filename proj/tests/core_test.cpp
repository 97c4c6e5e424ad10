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
#include <cstdint>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "adaptive/core.hpp"

namespace adaptive {
namespace {

TEST(NormalizeLogWeights, Symmetric) {
  const std::vector<double> lw{0.0, 0.0};
  const auto d = normalize_log_weights(lw);
  EXPECT_DOUBLE_EQ(d[0], 0.5);
  EXPECT_DOUBLE_EQ(d[1], 0.5);
}

TEST(NormalizeLogWeights, TwoPointSoftmax) {
  const std::vector<double> lw{-1.0, 0.0};
  const auto d = normalize_log_weights(lw);
  EXPECT_NEAR(d[0], 0.26894142136999512, 1e-15);
  EXPECT_NEAR(d[1], 0.73105857863000488, 1e-15);
}

TEST(NormalizeLogWeights, LargeGapsStayFinite) {
  const std::vector<double> lw{-1000.0, 0.0, -1000.0};
  const auto d = normalize_log_weights(lw);
  EXPECT_LT(d[0], 1e-300);
  EXPECT_LT(d[2], 1e-300);
  EXPECT_DOUBLE_EQ(d[1], 1.0);
  for (double w : d.weights()) EXPECT_FALSE(std::isnan(w));
}

TEST(NormalizeLogWeights, AllNegativeInfinityIsEmptySupport) {
  const std::vector<double> lw{kNegInf, kNegInf};
  try {
    normalize_log_weights(lw);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("empty support"), std::string::npos);
  }
}

TEST(NormalizeLogWeights, ShiftInvariance) {
  Engine eng = make_engine({"mt19937_64", 7});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + eng() % 9;
    std::vector<double> lw(k), shifted(k);
    const double c = 200.0 * (uniform01(eng) - 0.5);
    for (std::size_t i = 0; i < k; ++i) {
      lw[i] = 40.0 * (uniform01(eng) - 0.5);
      shifted[i] = lw[i] + c;
    }
    const auto a = normalize_log_weights(lw);
    const auto b = normalize_log_weights(shifted);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_NEAR(a[i], b[i], 1e-12);
      EXPECT_GE(a[i], 0.0);
      total += a[i];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Distribution, RejectsBadWeights) {
  EXPECT_THROW(Distribution(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(Distribution(std::vector<double>{0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Distribution(std::vector<double>{-0.1, 1.1}), std::invalid_argument);
  EXPECT_THROW(Distribution::point_mass(3, 3), std::out_of_range);
}

TEST(KlDivergence, Basics) {
  const auto pi = Distribution::uniform(2);
  EXPECT_EQ(kl_divergence(pi, pi), 0.0);
  EXPECT_NEAR(kl_divergence(Distribution::point_mass(2, 0), pi), std::log(2.0), 1e-15);
  EXPECT_EQ(kl_divergence(pi, Distribution::point_mass(2, 0)), kInf);
  EXPECT_THROW(kl_divergence(pi, Distribution::uniform(3)), std::invalid_argument);
}

TEST(KlDivergence, MatchesHighPrecisionSum) {
  // 0.7 log 1.4 + 0.3 log 0.6, evaluated in 40-digit arithmetic.
  const Distribution f(std::vector<double>{0.7, 0.3});
  EXPECT_NEAR(kl_divergence(f, Distribution::uniform(2)), 0.082282878505051846, 1e-12);
}

TEST(KlDivergence, NonnegativeAndZeroNearPrior) {
  Engine eng = make_engine({"mt19937_64", 11});
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + eng() % 6;
    std::vector<double> a(k), b(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = uniform01(eng) + 1e-3;
      b[i] = uniform01(eng) + 1e-3;
    }
    const auto f = Distribution::from_mass(a);
    const auto pi = Distribution::from_mass(b);
    EXPECT_GE(kl_divergence(f, pi), 0.0);
    std::vector<double> near(pi.weights().begin(), pi.weights().end());
    near[0] += 1e-13;
    near[1] -= 1e-13;
    EXPECT_LE(kl_divergence(Distribution(near), pi), 1e-10);
  }
}

GameSpec two_by_two() {
  return GameSpec({"a", "b"}, {{0.0}, {1.0}}, {{0.0, 1.0}, {1.0, 0.0}}, {0.0, 1.0},
                  expert_comparators(2), 3);
}

TEST(ExpectedLoss, PointMassAndAverage) {
  const auto g = two_by_two();
  EXPECT_EQ(expected_loss(Distribution::point_mass(2, 1), 0, g), 1.0);
  EXPECT_EQ(expected_loss(Distribution::uniform(2), 1, g), 0.5);
  EXPECT_THROW(expected_loss(Distribution::uniform(2), 2, g), std::out_of_range);
}

TEST(ExpectedLoss, MatchesScalarLoop) {
  Engine eng = make_engine({"mt19937_64", 3});
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nd = 1 + eng() % 7, ny = 1 + eng() % 5;
    std::vector<std::string> names(nd, "d");
    std::vector<std::vector<double>> outcomes(ny, std::vector<double>{0.0});
    std::vector<std::vector<double>> loss(nd, std::vector<double>(ny));
    for (auto& row : loss) {
      for (double& v : row) v = uniform01(eng);
    }
    std::vector<double> mass(nd);
    for (double& m : mass) m = uniform01(eng) + 1e-6;
    const auto q = Distribution::from_mass(mass);
    const GameSpec g(names, outcomes, loss, {0.0, 1.0}, expert_comparators(nd), 1);
    for (std::size_t y = 0; y < ny; ++y) {
      long double ref = 0.0L;
      for (std::size_t d = 0; d < nd; ++d) ref += static_cast<long double>(q[d]) * loss[d][y];
      EXPECT_NEAR(expected_loss(q, y, g), static_cast<double>(ref), 1e-14);
    }
  }
}

TEST(GameSpec, ValidatesInputs) {
  EXPECT_THROW(GameSpec({"a"}, {{0.0}}, {{1.5}}, {0.0, 1.0}, expert_comparators(1), 1),
               std::invalid_argument);
  EXPECT_THROW(GameSpec({"a"}, {{0.0}}, {{0.5}}, {0.0, 1.0}, {}, 1), std::invalid_argument);
  EXPECT_THROW(GameSpec({"a"}, {{0.0}}, {{0.5}}, {0.0, 1.0}, expert_comparators(1), 0),
               std::invalid_argument);
}

TEST(GameSpec, SimplexGridCounts) {
  EXPECT_EQ(simplex_grid(3, 4).size(), 15u);
  EXPECT_EQ(simplex_grid_size(3, 4), 15.0);
  for (const auto& p : simplex_grid(4, 3)) {
    double s = 0.0;
    for (double v : p) s += v;
    EXPECT_NEAR(s, 1.0, 1e-15);
  }
}

TEST(Tree, Addressing) {
  // Depth 2 with nodes (a; b, c).
  const BinaryTree<double> tree(2, {1.0, 2.0, 3.0});
  EXPECT_EQ(tree_get(tree, 1, std::vector<int>{}), 1.0);
  EXPECT_EQ(tree_get(tree, 2, std::vector<int>{-1}), 2.0);
  EXPECT_EQ(tree_get(tree, 2, std::vector<int>{1}), 3.0);
  EXPECT_THROW(tree_get(tree, 2, std::vector<int>{}), std::invalid_argument);
  EXPECT_THROW(tree_get(tree, 2, std::vector<int>{0}), std::invalid_argument);
  EXPECT_THROW(tree_get(tree, 3, std::vector<int>{1, 1}), std::invalid_argument);
  EXPECT_THROW(BinaryTree<double>(2, {1.0, 2.0}), std::invalid_argument);
}

TEST(Tree, EnumerationVisitsEveryLevelNodeOnce) {
  const int depth = 3;
  std::vector<double> values(tree_node_count(depth));
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<double>(i);
  const BinaryTree<double> tree(depth, values);
  for (int level = 1; level <= depth; ++level) {
    std::multiset<double> seen;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (level - 1)); ++code) {
      std::vector<int> path;
      for (int s = 0; s < level - 1; ++s) path.push_back(path_sign(code, s));
      seen.insert(tree_get(tree, level, path));
    }
    const std::size_t first = (std::size_t{1} << (level - 1)) - 1;
    ASSERT_EQ(seen.size(), std::size_t{1} << (level - 1));
    for (std::size_t i = first; i < 2 * first + 1; ++i) EXPECT_EQ(seen.count(values[i]), 1u);
  }
  // The last sign does not move below the leaf level, so each of the 8 full
  // paths shares its leaf with exactly one other path.
  std::multiset<std::size_t> leaves;
  std::vector<std::size_t> nodes(depth);
  for (std::uint64_t code = 0; code < 8; ++code) {
    path_nodes(code, depth, nodes);
    leaves.insert(nodes[depth - 1]);
  }
  for (std::size_t i = 3; i < 7; ++i) EXPECT_EQ(leaves.count(i), 2u);
}

TEST(Ladder, Doubling) {
  const RadiusLadder ladder(5);
  EXPECT_EQ(ladder.radius(0), 1.0);
  for (int i = 0; i + 1 < ladder.size(); ++i) EXPECT_EQ(ladder.radius(i + 1), 2.0 * ladder.radius(i));
  EXPECT_THROW(ladder.radius(5), std::out_of_range);
  EXPECT_THROW(RadiusLadder(0), std::invalid_argument);
  // n log K + 1 = 16 log 4 + 1 ~ 23.18 -> ceil(log2) = 5, plus one.
  EXPECT_EQ(RadiusLadder::default_i_max(16, 4), 6);
}

TEST(Rng, IdenticalSpecsReproduce) {
  const RngSpec spec{"mt19937_64", 99};
  Engine a = make_engine(spec, 4), b = make_engine(spec, 4);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a(), b());
  Engine c = make_engine(spec, 5);
  Engine d = make_engine({"mt19937_64", 104});
  EXPECT_EQ(c(), d());
  EXPECT_THROW(make_engine({"pcg32", 1}), std::invalid_argument);
  Engine e = make_engine(spec);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(e);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace adaptive
