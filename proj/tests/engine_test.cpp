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

#include "yieldopt/engine.hpp"

#include <gtest/gtest.h>

#include "yieldopt/errors.hpp"
#include "yieldopt/random.hpp"

namespace yieldopt {
namespace {

ThresholdPolicy binary_policy() {
  return ThresholdPolicy(RewardDistribution::binary(0.5, 0.5), {0.306853, 1.0});
}

AllocationState state_with(std::vector<std::int64_t> demand, std::vector<std::int64_t> delivered) {
  AllocationState state(std::move(demand));
  for (std::size_t a = 0; a < delivered.size(); ++a) {
    for (std::int64_t k = 0; k < delivered[a]; ++k) state.deliver(static_cast<AdvertiserId>(a));
  }
  return state;
}

TEST(ServeQueryTest, FirstSegmentTakesRewardAtReserve) {
  auto state = state_with({10}, {1});
  const std::vector<AdvertiserId> eligible = {0};
  const Decision d = serve_query(state, binary_policy(), eligible, 0.5);
  EXPECT_EQ(d.target, Decision::Target::kContract);
  EXPECT_EQ(d.advertiser, 0);
  EXPECT_EQ(d.reserve, 0.5);
  EXPECT_EQ(state.delivered(0), 2);
}

TEST(ServeQueryTest, SecondSegmentSellsPositiveRewards) {
  auto state = state_with({10}, {5});
  const std::vector<AdvertiserId> eligible = {0};
  const Decision d = serve_query(state, binary_policy(), eligible, 0.5);
  EXPECT_EQ(d.target, Decision::Target::kExchange);
  EXPECT_EQ(d.reserve, 0.0);
  EXPECT_EQ(d.min_sr_advertiser, 0);
  EXPECT_EQ(state.exchange_revenue(), 0.5);
  // A zero reward still goes to the contract in the last segment.
  EXPECT_EQ(serve_query(state, binary_policy(), eligible, 0.0).target,
            Decision::Target::kContract);
}

TEST(ServeQueryTest, SaturatedOrEmptyGoesToExchange) {
  auto state = state_with({2, 1}, {2, 1});
  const std::vector<AdvertiserId> both = {0, 1};
  for (double r : {0.0, 0.5}) {
    const Decision d = serve_query(state, binary_policy(), both, r);
    EXPECT_EQ(d.target, Decision::Target::kExchange);
    EXPECT_FALSE(d.reserve.has_value());
  }
  const Decision none = serve_query(state, binary_policy(), {}, 0.0);
  EXPECT_EQ(none.target, Decision::Target::kExchange);
  EXPECT_EQ(state.queries(), 3 + 3);  // three deliveries made the state
}

TEST(ServeQueryTest, PicksLowestRatioThenLowestId) {
  auto state = state_with({4, 2, 6}, {2, 1, 2});  // SR 1/2, 1/2, 1/3
  const std::vector<AdvertiserId> all = {0, 1, 2};
  EXPECT_EQ(state.neediest(all), 2);
  const std::vector<AdvertiserId> first_two = {0, 1};
  EXPECT_EQ(state.neediest(first_two), 0);
  const std::vector<AdvertiserId> reversed = {1, 0};
  EXPECT_EQ(state.neediest(reversed), 0);
}

TEST(MultiExchangeTest, OutcomesFromComparisonsOnly) {
  const std::vector<AdvertiserId> eligible = {0};
  {
    auto state = state_with({10}, {1});
    const std::vector<ExchangeBid> bids = {{1, false, true, 0.4}, {2, false, false, 0.1}};
    const Decision d = serve_query_multi_exchange(state, binary_policy(), eligible, bids);
    EXPECT_EQ(d.target, Decision::Target::kContract);
  }
  {
    auto state = state_with({10}, {1});
    const std::vector<ExchangeBid> bids = {{1, false, false, 0.4}, {7, true, true, 0.6}};
    const Decision d = serve_query_multi_exchange(state, binary_policy(), eligible, bids);
    EXPECT_EQ(d.target, Decision::Target::kExchange);
    EXPECT_EQ(d.exchange_id, 7);
    EXPECT_EQ(state.exchange_revenue(), 0.6);
  }
  {
    auto state = state_with({1}, {1});
    const std::vector<ExchangeBid> bids = {{3, false, true, 0.0}};
    const Decision d = serve_query_multi_exchange(state, binary_policy(), eligible, bids);
    EXPECT_EQ(d.target, Decision::Target::kExchange);
    EXPECT_EQ(d.exchange_id, 3);
  }
}

TEST(MultiExchangeTest, RejectsInconsistentBids) {
  auto state = state_with({10}, {0});
  const std::vector<AdvertiserId> eligible = {0};
  for (const auto& bids : {std::vector<ExchangeBid>{{1, true, true, 1}, {2, false, true, 0}},
                           std::vector<ExchangeBid>{{1, false, true, 1}, {2, true, false, 0}}}) {
    try {
      serve_query_multi_exchange(state, binary_policy(), eligible, bids);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kMalformedBidSet);
    }
  }
  EXPECT_EQ(state.queries(), 0);
}

// Random replay: single-exchange comparisons give the same decisions, every
// decision picks a minimum-SR advertiser, deliveries never decrease.
TEST(EngineProperty, AgreementAndInvariants) {
  Rng rng(31);
  const auto dist = RewardDistribution::from_masses({0.0, 0.3, 0.8}, std::vector{0.3, 0.4, 0.3});
  const ThresholdPolicy policy(dist, {0.25, 0.7, 1.0});
  for (int run = 0; run < 20; ++run) {
    const std::size_t m = 1 + uniform_below(rng, 5);
    std::vector<std::int64_t> demand(m);
    for (auto& n : demand) n = 1 + static_cast<std::int64_t>(uniform_below(rng, 8));
    AllocationState a(demand);
    AllocationState b(demand);
    for (int q = 0; q < 60; ++q) {
      std::vector<AdvertiserId> eligible;
      for (std::size_t i = 0; i < m; ++i) {
        if (uniform01(rng) < 0.5) eligible.push_back(static_cast<AdvertiserId>(i));
      }
      const double reward = dist.sample(rng);
      const auto before = a;
      const Decision da = serve_query(a, policy, eligible, reward);
      const Quote quoted = quote(b, policy, eligible);
      const bool clears = quoted.reserve ? reward > *quoted.reserve : true;
      const std::vector<ExchangeBid> bids = {{0, clears, true, reward}};
      const Decision db = serve_query_multi_exchange(b, policy, eligible, bids);
      EXPECT_EQ(da.target, db.target);
      EXPECT_EQ(da.advertiser, db.advertiser);
      EXPECT_EQ(a.exchange_revenue(), b.exchange_revenue());
      if (da.min_sr_advertiser) {
        for (AdvertiserId e : eligible) {
          EXPECT_FALSE(before.less_satisfied(e, *da.min_sr_advertiser));
        }
      }
      for (std::size_t i = 0; i < m; ++i) {
        const auto id = static_cast<AdvertiserId>(i);
        EXPECT_GE(a.delivered(id), before.delivered(id));
        EXPECT_LE(a.delivered(id), a.demand(id));
      }
    }
    EXPECT_EQ(a.queries(), 60);
  }
}

TEST(FinalizeTest, PenaltyAndRevenueAccounting) {
  const AllocationState empty({4, 6});
  EXPECT_EQ(finalize(empty, 1.0, 0.0).reward, -10.0);

  auto full = state_with({1, 2}, {1, 2});
  full.sell(0.25);
  full.sell(0.5);
  const RunReport r = finalize(full, 1.0, 0.0);
  EXPECT_EQ(r.reward, 0.75);
  EXPECT_EQ(r.fill_rate(), 1.0);
  EXPECT_EQ(r.queries, 5);

  const RunReport shifted = finalize(empty, 0.5, 3.0);
  EXPECT_EQ(shifted.reward, -2.0);
  EXPECT_EQ(shifted.penalty_paid, 5.0);
}

TEST(SimulateTest, ReplaysBitIdentically) {
  const Instance inst = gen_upper_triangular(10, 20, 2.0, 4);
  const auto policy = binary_policy();
  const RunReport a = simulate(inst, policy, 1.0, 0.0, 77);
  const RunReport b = simulate(inst, policy, 1.0, 0.0, 77);
  EXPECT_EQ(a.reward, b.reward);
  EXPECT_EQ(a.fill, b.fill);
  EXPECT_EQ(a.seed, 77u);
  EXPECT_EQ(a.queries, inst.total_queries());
  EXPECT_NE(a.reward, simulate(inst, policy, 1.0, 0.0, 78).reward);
}

TEST(SimulateTest, RealizedRunNeedsOneRewardPerQuery) {
  const Instance inst({1}, {{2, {0}}});
  const std::vector<double> one = {0.0};
  EXPECT_THROW(run_realized(inst, binary_policy(), one, 1.0, 0.0), Error);
  const std::vector<double> two = {0.5, 0.0};
  // First query: SR 0 in segment 1, reserve 0.5 -> delivered; second sold.
  const RunReport r = run_realized(inst, binary_policy(), two, 1.0, 0.0);
  EXPECT_EQ(r.delivered, 1);
  EXPECT_EQ(r.reward, 0.0);
}

}  // namespace
}  // namespace yieldopt
