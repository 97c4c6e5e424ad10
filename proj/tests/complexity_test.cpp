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
#include <vector>

#include <gtest/gtest.h>

#include "adaptive/complexity.hpp"

namespace adaptive {
namespace {

// Straightforward enumeration used as an independent reference.
double brute_rademacher(const FunctionTable& t, double alpha = 0.0) {
  const int n = t.depth();
  double total = 0.0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    double best = -1e300;
    for (std::size_t g = 0; g < t.num_functions(); ++g) {
      double s = 0.0;
      std::size_t node = 0;
      for (int step = 0; step < n; ++step) {
        const int eps = ((code >> step) & 1U) ? 1 : -1;
        const double v = t.value(g, node);
        s += eps * v - 2.0 * alpha * v * v;
        node = 2 * node + (eps < 0 ? 1 : 2);
      }
      best = std::max(best, s);
    }
    total += best;
  }
  return total / static_cast<double>(std::uint64_t{1} << n);
}

TEST(SeqRademacher, ZeroAndSingletonClasses) {
  Engine eng = make_engine({"mt19937_64", 1});
  const FunctionTable zero(4, {std::vector<double>(15, 0.0)});
  EXPECT_EQ(seq_rademacher_exact(zero), 0.0);
  const auto single = FunctionTable::random(6, 1, eng);
  EXPECT_NEAR(seq_rademacher_exact(single), 0.0, 1e-14);
}

TEST(SeqRademacher, TwoSignsOnConstantTree) {
  const FunctionTable t(1, {{1.0}, {-1.0}});
  EXPECT_DOUBLE_EQ(seq_rademacher_exact(t), 1.0);
}

TEST(SeqRademacher, CapDirectsToMonteCarlo) {
  Engine eng = make_engine({"mt19937_64", 2});
  const auto t = FunctionTable::random(13, 2, eng);
  try {
    seq_rademacher_exact(t);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("Monte Carlo"), std::string::npos);
  }
}

TEST(SeqRademacher, MatchesBruteForceAndGrowsWithClass) {
  Engine eng = make_engine({"mt19937_64", 3});
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(eng() % 8);
    const auto t = FunctionTable::random(n, 1 + eng() % 5, eng);
    const double exact = seq_rademacher_exact(t);
    EXPECT_NEAR(exact, brute_rademacher(t), 1e-12);
    std::vector<double> extra(tree_node_count(n));
    for (double& v : extra) v = 2.0 * uniform01(eng) - 1.0;
    EXPECT_GE(seq_rademacher_exact(t.with_function(extra)), exact - 1e-12);
  }
}

TEST(SeqRademacher, MonteCarloAgreesWithExact) {
  Engine eng = make_engine({"mt19937_64", 4});
  int outside = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(eng() % 9);
    const auto t = FunctionTable::random(n, 2 + eng() % 6, eng);
    const double exact = seq_rademacher_exact(t);
    const auto mc = seq_rademacher_mc(t, 4000, {"mt19937_64", 1000u + trial});
    EXPECT_FALSE(mc.exact);
    if (std::abs(mc.value - exact) > 4.0 * mc.std_error) ++outside;
  }
  EXPECT_EQ(outside, 0);
}

TEST(SeqRademacher, MonteCarloDeterministicAndZeroClass) {
  Engine eng = make_engine({"mt19937_64", 5});
  const auto t = FunctionTable::random(8, 4, eng);
  const auto a = seq_rademacher_mc(t, 500, {"mt19937_64", 42});
  const auto b = seq_rademacher_mc(t, 500, {"mt19937_64", 42});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  const FunctionTable zero(5, {std::vector<double>(31, 0.0)});
  const auto z = seq_rademacher_mc(zero, 100, {});
  EXPECT_EQ(z.value, 0.0);
  EXPECT_EQ(z.std_error, 0.0);
  EXPECT_THROW(seq_rademacher_mc(t, 99, {}), std::invalid_argument);
}

TEST(OffsetExpectation, NoneFormIsRademacher) {
  Engine eng = make_engine({"mt19937_64", 6});
  const auto t = FunctionTable::random(7, 5, eng);
  EXPECT_EQ(offset_expectation(t, OffsetForm::none(), EstimationMode::exact).value,
            seq_rademacher_exact(t));
}

TEST(OffsetExpectation, QuadraticMatchesBruteForceAndDecreasesInAlpha) {
  Engine eng = make_engine({"mt19937_64", 7});
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(eng() % 7);
    const auto t = FunctionTable::random(n, 1 + eng() % 6, eng);
    double prev = 1e300;
    for (double alpha : {0.01, 0.1, 0.5, 1.0, 4.0}) {
      const double v = offset_expectation(t, OffsetForm::quadratic(alpha), EstimationMode::exact).value;
      EXPECT_NEAR(v, brute_rademacher(t, alpha), 1e-12);
      EXPECT_LE(v, prev + 1e-12);
      prev = v;
    }
  }
  EXPECT_THROW(offset_expectation(FunctionTable::random(2, 2, eng), OffsetForm::quadratic(0.0),
                                  EstimationMode::exact),
               std::invalid_argument);
  EXPECT_THROW(offset_expectation(FunctionTable::random(2, 2, eng), OffsetForm::custom(nullptr),
                                  EstimationMode::exact),
               std::invalid_argument);
}

TEST(OffsetExpectation, FiniteClassOffsetAtMostOne) {
  Engine eng = make_engine({"mt19937_64", 8});
  double worst = -1e300;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(eng() % 10);
    const auto t = FunctionTable::random(n, 1 + eng() % 8, eng);
    const double v = offset_expectation(t, OffsetForm::finite_class(), EstimationMode::exact).value;
    worst = std::max(worst, v);
    EXPECT_LE(v, 1.0);
  }
  RecordProperty("worst", std::to_string(worst));
}

TEST(OffsetExpectation, MultiscaleCoveringOffsetBound) {
  Engine eng = make_engine({"mt19937_64", 9});
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(eng() % 7);
    const auto t = FunctionTable::random(n, 2 + eng() % 5, eng);
    const double v =
        offset_expectation(t, OffsetForm::multiscale_covering(), EstimationMode::exact).value;
    EXPECT_LE(v, 7.0 + 2.0 * std::log(static_cast<double>(n)));
  }
}

TEST(OffsetExpectation, CustomPenaltyMatchesQuadratic) {
  Engine eng = make_engine({"mt19937_64", 10});
  const auto t = FunctionTable::random(6, 4, eng);
  const auto custom = OffsetForm::custom([](double q, int) { return 2.0 * 0.3 * q; });
  EXPECT_NEAR(offset_expectation(t, custom, EstimationMode::exact).value,
              offset_expectation(t, OffsetForm::quadratic(0.3), EstimationMode::exact).value, 1e-12);
}

// Reference cover: minimum over all subsets V of the class, checked directly.
std::size_t brute_cover(const FunctionTable& t, double alpha, CoverNorm norm) {
  const int n = t.depth();
  const std::size_t m = t.num_functions();
  std::size_t best = m;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << m); ++subset) {
    bool ok = true;
    for (std::uint64_t code = 0; ok && code < (std::uint64_t{1} << n); ++code) {
      std::vector<std::size_t> nodes(n);
      path_nodes(code, n, nodes);
      for (std::size_t g = 0; ok && g < m; ++g) {
        bool covered = false;
        for (std::size_t v = 0; !covered && v < m; ++v) {
          if (!((subset >> v) & 1U)) continue;
          double s = 0.0, mx = 0.0;
          for (int step = 0; step < n; ++step) {
            const double d = t.value(g, nodes[step]) - t.value(v, nodes[step]);
            s += d * d;
            mx = std::max(mx, std::abs(d));
          }
          covered = norm == CoverNorm::l2 ? std::sqrt(s / n) <= alpha : mx <= alpha;
        }
        ok = covered;
      }
    }
    if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(std::popcount(subset)));
  }
  return best;
}

TEST(CoveringNumber, ExactMatchesSubsetSearch) {
  Engine eng = make_engine({"mt19937_64", 11});
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(eng() % 4);
    const auto t = FunctionTable::random(n, 6, eng);
    for (double alpha : {0.2, 0.5, 0.8, 1.2}) {
      for (CoverNorm norm : {CoverNorm::l2, CoverNorm::linf}) {
        const auto r = covering_number(t, alpha, norm);
        EXPECT_TRUE(r.exact);
        EXPECT_EQ(r.size, brute_cover(t, alpha, norm)) << "alpha " << alpha;
      }
    }
  }
}

TEST(CoveringNumber, ExtremesAndMonotonicity) {
  Engine eng = make_engine({"mt19937_64", 12});
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = FunctionTable::random(4, 2 + eng() % 7, eng);
    EXPECT_EQ(covering_number(t, 2.0, CoverNorm::l2).size, 1u);
    EXPECT_EQ(covering_number(t, 2.0, CoverNorm::linf).size, 1u);
    EXPECT_EQ(covering_number(t, 1e-9, CoverNorm::l2).size, t.num_functions());
    std::size_t prev = t.num_functions() + 1;
    for (double alpha = 0.05; alpha < 2.1; alpha += 0.05) {
      const auto l2 = covering_number(t, alpha, CoverNorm::l2).size;
      const auto linf = covering_number(t, alpha, CoverNorm::linf).size;
      EXPECT_LE(l2, prev);
      EXPECT_GE(linf, l2);
      prev = l2;
    }
  }
  EXPECT_THROW(covering_number(FunctionTable::random(2, 2, eng), 0.0, CoverNorm::l2),
               std::invalid_argument);
}

TEST(CoveringNumber, GreedyAboveExactCap) {
  Engine eng = make_engine({"mt19937_64", 13});
  const auto t = FunctionTable::random(3, 14, eng);
  const auto r = covering_number(t, 0.7, CoverNorm::l2);
  EXPECT_FALSE(r.exact);
  EXPECT_GE(r.size, 1u);
  EXPECT_LE(r.size, 14u);
}

TEST(DudleyIntegral, SingletonIsZero) {
  Engine eng = make_engine({"mt19937_64", 14});
  const auto prof = CoveringProfile::from_table(FunctionTable::random(5, 1, eng));
  EXPECT_EQ(dudley_integral(prof, 1.0, 5), 0.0);
}

TEST(DudleyIntegral, PowerLawClosedForm) {
  const auto prof = CoveringProfile::analytic(1.0);
  for (int n : {4, 16, 64, 256}) {
    for (double gamma : {0.5, 1.0, 2.0}) {
      // Antiderivative of sqrt(n / delta) is 2 sqrt(n delta).
      const double closed = 2.0 * std::sqrt(n) * (std::sqrt(gamma) - std::sqrt(1.0 / n));
      EXPECT_NEAR(dudley_integral(prof, gamma, n), closed, 0.01 * closed);
    }
  }
  EXPECT_EQ(dudley_integral(prof, 0.01, 16), 0.0);
  EXPECT_THROW(CoveringProfile::analytic(2.0), std::invalid_argument);
}

TEST(DudleyIntegral, NondecreasingInGamma) {
  Engine eng = make_engine({"mt19937_64", 15});
  const auto prof = CoveringProfile::from_table(FunctionTable::random(6, 5, eng));
  double prev = 0.0;
  for (double gamma = 0.2; gamma <= 2.0; gamma += 0.1) {
    const double v = dudley_integral(prof, gamma, 6);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
  const auto power = CoveringProfile::analytic(1.5);
  prev = 0.0;
  for (double gamma = 0.2; gamma <= 2.0; gamma += 0.01) {
    const double v = dudley_integral(power, gamma, 6);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
}

TEST(DudleyIntegral, StepProfileMatchesFineMidpointRule) {
  Engine eng = make_engine({"mt19937_64", 16});
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3 + trial;
    const auto t = FunctionTable::random(n, 5, eng);
    const auto prof = CoveringProfile::from_table(t);
    const double lo = 1.0 / n, gamma = 1.5;
    const int pieces = 4000;
    double ref = 0.0;
    for (int k = 0; k < pieces; ++k) {
      const double x = lo + (k + 0.5) * (gamma - lo) / pieces;
      const double size = static_cast<double>(covering_number(t, x, CoverNorm::l2).size);
      ref += std::sqrt(n * std::log(size)) * (gamma - lo) / pieces;
    }
    EXPECT_NEAR(dudley_integral(prof, gamma, n), ref, 0.005 * ref + 1e-9);
  }
}

}  // namespace
}  // namespace adaptive
