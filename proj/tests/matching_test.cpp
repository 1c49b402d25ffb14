// Copyright 2026 The yieldopt Authors
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

#include "yieldopt/matching.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "yieldopt/random.hpp"

namespace yieldopt {
namespace {

TEST(MatchingTest, PotentialIsDecreasing) {
  EXPECT_NEAR(rank_potential(0.0, 2), 1 - std::exp(-0.5), 1e-15);
  EXPECT_EQ(rank_potential(1.0, 2), 0.0);
  EXPECT_GT(rank_potential(0.3, 1), rank_potential(0.4, 1));
  EXPECT_NEAR(matching_ratio_bound(1), 1 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(matching_ratio_bound(2), 0.78693868057473315, 1e-15);
  EXPECT_NEAR(matching_ratio_bound(4), 0.88479686771438053, 1e-15);
}

TEST(MatchingTest, SingleAdvertiser) {
  const Instance inst({1}, {{1, {0}}});
  const std::vector<double> w = {2.5};
  EXPECT_EQ(perturbed_greedy(inst, w, 1, 3).weight, 2.5);
  EXPECT_EQ(empirical_ratio(1, 5, 2, {}, 10, 1).mean, 1.0);
}

TEST(MatchingTest, UnitWeightsFollowLowestRank) {
  // Queries reach {0, 1, 2}, then {0, 1}, then {0}.
  const Instance inst({1, 1, 1}, {{1, {0, 1, 2}}, {1, {0, 1}}, {1, {0}}});
  const std::vector<double> ranks = {0.5, 0.2, 0.9};
  const auto result = ranking(inst, ranks);
  ASSERT_EQ(result.assigned.size(), 3u);
  EXPECT_EQ(result.assigned[0], 1);
  EXPECT_EQ(result.assigned[1], 0);
  EXPECT_FALSE(result.assigned[2].has_value());
  EXPECT_EQ(result.weight, 2.0);
}

TEST(MatchingTest, WeightsTradeOffAgainstRank) {
  const Instance inst({1, 1}, {{1, {0, 1}}});
  const std::vector<double> ranks = {0.1, 0.8};
  const std::vector<double> heavy = {1.0, 10.0};
  EXPECT_EQ(perturbed_greedy(inst, heavy, ranks, 1).assigned[0], 1);
  const std::vector<double> light = {1.0, 1.5};
  EXPECT_EQ(perturbed_greedy(inst, light, ranks, 1).assigned[0], 0);
}

TEST(MatchingTest, TiesGoToLowestAdvertiser) {
  const Instance inst({1, 1}, {{1, {0, 1}}});
  const std::vector<double> ranks = {0.4, 0.4};
  const std::vector<double> w = {1.0, 1.0};
  EXPECT_EQ(perturbed_greedy(inst, w, ranks, 2).assigned[0], 0);
}

TEST(MatchingTest, UnitWeightsMatchRankingAndScaleInvariance) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = gen_upper_triangular(12, 3, 2.0, derive_seed(9, trial));
    std::vector<double> ranks(static_cast<std::size_t>(inst.total_demand()));
    for (double& x : ranks) x = uniform01(rng);
    std::vector<double> w(12);
    for (double& x : w) x = 0.5 + uniform01(rng);
    const std::vector<double> unit(12, 1.0);
    EXPECT_EQ(perturbed_greedy(inst, unit, ranks, 2).assigned, ranking(inst, ranks).assigned);
    std::vector<double> scaled = w;
    for (double& x : scaled) x *= 3.75;
    EXPECT_EQ(perturbed_greedy(inst, w, ranks, 2).assigned,
              perturbed_greedy(inst, scaled, ranks, 2).assigned);
  }
}

TEST(MatchingTest, EmpiricalRatioNearBoundOnTriangularInstances) {
  for (int f : {1, 2, 4}) {
    const auto est = empirical_ratio(60, 1, f, {}, 200, 100 + f);
    const double bound = matching_ratio_bound(f);
    EXPECT_GE(est.mean, bound - 3 * est.std_error);
    EXPECT_LE(est.mean, bound + 2.0 / 60 + 3 * est.std_error);
  }
}

TEST(MatchingTest, SplitAndUnitVariantsAgreeRoughly) {
  // m advertisers of demand n versus m * n unit advertisers.
  const auto copies = empirical_ratio(20, 5, 2, {}, 200, 3);
  const auto units = empirical_ratio(100, 1, 2, {}, 200, 3);
  EXPECT_NEAR(copies.mean, units.mean, 0.03);
}

TEST(MatchingTest, WeightedRatioRespectsBound) {
  std::vector<double> w(40);
  Rng rng(12);
  for (double& x : w) x = 0.2 + uniform01(rng);
  const auto est = empirical_ratio(40, 2, 2, w, 200, 5);
  EXPECT_GE(est.mean, matching_ratio_bound(2) - 3 * est.std_error);
}

}  // namespace
}  // namespace yieldopt
