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

#include "yieldopt/instances.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "yieldopt/errors.hpp"

namespace yieldopt {
namespace {

TEST(InstancesTest, TriangularShape) {
  const Instance inst = gen_upper_triangular(3, 2, 2.0, 99);
  ASSERT_EQ(inst.groups().size(), 3u);
  for (const auto& g : inst.groups()) EXPECT_EQ(g.count, 4);
  EXPECT_EQ(inst.groups()[0].eligible.size(), 3u);
  EXPECT_EQ(inst.groups()[1].eligible.size(), 2u);
  EXPECT_EQ(inst.groups()[2].eligible.size(), 1u);
  // Nested eligibility: each group's set contains the next one's.
  for (std::size_t i = 1; i < 3; ++i) {
    for (AdvertiserId a : inst.groups()[i].eligible) {
      EXPECT_TRUE(std::ranges::binary_search(inst.groups()[i - 1].eligible, a));
    }
  }
  EXPECT_EQ(inst.total_queries(), 12);
  EXPECT_EQ(inst.declared_supply_factor(), 2.0);

  const Instance single = gen_upper_triangular(1, 5, 1.0, 0);
  ASSERT_EQ(single.groups().size(), 1u);
  EXPECT_EQ(single.groups()[0].count, 5);
  EXPECT_EQ(single.groups()[0].eligible, std::vector<AdvertiserId>{0});
}

TEST(InstancesTest, TriangularIsSeeded) {
  EXPECT_EQ(gen_upper_triangular(20, 3, 2.0, 5), gen_upper_triangular(20, 3, 2.0, 5));
  EXPECT_NE(gen_upper_triangular(20, 3, 2.0, 5), gen_upper_triangular(20, 3, 2.0, 6));
}

TEST(InstancesTest, TriangularNeedsIntegralGroups) {
  try {
    gen_upper_triangular(3, 3, 1.5, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonIntegralGroupSize);
  }
}

TEST(InstancesTest, ConstructorValidates) {
  auto expect_bad = [](std::vector<std::int64_t> d, std::vector<QueryGroup> g,
                       std::optional<double> f = std::nullopt) {
    try {
      const Instance inst(d, g, f);
      ADD_FAILURE() << "accepted " << d.size() << " advertisers, " << g.size() << " groups";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedInstance);
    }
  };
  expect_bad({0}, {});
  expect_bad({1}, {{1, {1}}});
  expect_bad({1, 1}, {{1, {0, 0}}});
  expect_bad({1}, {{-1, {0}}});
  expect_bad({2}, {{3, {0}}}, 2.0);
  EXPECT_NO_THROW(Instance({2}, {{4, {0}}}, 2.0));
  // Eligibility lists are stored sorted.
  EXPECT_EQ(Instance({1, 1}, {{1, {1, 0}}}).groups()[0].eligible,
            (std::vector<AdvertiserId>{0, 1}));
}

TEST(InstancesTest, SupplyFactorOfGenerators) {
  for (double f : {1.0, 1.5, 2.0, 3.0}) {
    for (int m : {1, 4, 9}) {
      EXPECT_NEAR(supply_factor(gen_upper_triangular(m, 4, f, 17)), f, 1e-6);
      EXPECT_NEAR(supply_factor(gen_complete(m, 4, f)), f, 1e-6);
    }
  }
}

TEST(InstancesTest, SupplyFactorZeroWhenAnAdvertiserIsUnreachable) {
  EXPECT_EQ(supply_factor(Instance({1, 1}, {{5, {0}}})), 0.0);
}

TEST(InstancesTest, SupplyFactorInvariances) {
  const Instance base({4, 2, 2}, {{6, {0, 1}}, {3, {1, 2}}, {5, {0, 2}}});
  const double f = supply_factor(base);
  // Relabel advertisers 0 <-> 2.
  const Instance relabeled({2, 2, 4}, {{6, {1, 2}}, {3, {0, 1}}, {5, {0, 2}}});
  EXPECT_NEAR(supply_factor(relabeled), f, 1e-9);
  // Split advertiser 0 (demand 4) into two of demand 2 with the same edges.
  const Instance split({2, 2, 2, 2}, {{6, {0, 1, 3}}, {3, {1, 2}}, {5, {0, 2, 3}}});
  EXPECT_NEAR(supply_factor(split), f, 1e-9);
  // Hand value: advertiser 0 can draw from groups 0 and 2 (11 queries) but
  // all 14 queries are shared by demand 8: f = 14 / 8 is the binding cut.
  EXPECT_NEAR(f, 14.0 / 8.0, 1e-9);
  EXPECT_TRUE(supports_supply(base, f - 1e-6));
  EXPECT_FALSE(supports_supply(base, f + 1e-6));
}

TEST(InstancesTest, ArrivalGroupsFollowGroupOrder) {
  const Instance inst({1, 1}, {{2, {0}}, {1, {1}}});
  EXPECT_EQ(inst.arrival_groups(), (std::vector<std::size_t>{0, 0, 1}));
}

}  // namespace
}  // namespace yieldopt
