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

#include <string>

#include "yieldopt/errors.hpp"
#include "yieldopt/random.hpp"

namespace yieldopt {

AllocationState::AllocationState(std::vector<std::int64_t> demands)
    : demand_(std::move(demands)), delivered_(demand_.size(), 0) {
  for (std::int64_t n : demand_) {
    if (n <= 0) throw Error(ErrorCode::kMalformedInstance, "demand must be positive");
  }
}

bool AllocationState::less_satisfied(AdvertiserId a, AdvertiserId b) const {
  return delivered_[a] * demand_[b] < delivered_[b] * demand_[a];
}

std::optional<AdvertiserId> AllocationState::neediest(
    std::span<const AdvertiserId> eligible) const {
  std::optional<AdvertiserId> best;
  for (AdvertiserId a : eligible) {
    if (!best || less_satisfied(a, *best) ||
        (!less_satisfied(*best, a) && a < *best)) {
      best = a;
    }
  }
  return best;
}

void AllocationState::deliver(AdvertiserId a) {
  if (saturated(a)) {
    throw std::logic_error("delivery beyond demand for advertiser " +
                           std::to_string(a));
  }
  ++delivered_[a];
  ++queries_;
}

void AllocationState::sell(double revenue) {
  revenue_ += revenue;
  ++queries_;
}

Quote quote(const AllocationState& state, const ThresholdPolicy& policy,
            std::span<const AdvertiserId> eligible) {
  const auto a = state.neediest(eligible);
  if (!a || state.saturated(*a)) return {};
  const std::size_t u = policy.segment_of(state.delivered(*a), state.demand(*a));
  return {a, u, policy.reserve(u)};
}

Decision serve_query(AllocationState& state, const ThresholdPolicy& policy,
                     std::span<const AdvertiserId> eligible, double reward) {
  const Quote q = quote(state, policy, eligible);
  Decision decision;
  decision.min_sr_advertiser = q.advertiser;
  decision.reserve = q.reserve;
  if (q.advertiser && reward <= *q.reserve) {
    decision.target = Decision::Target::kContract;
    decision.advertiser = q.advertiser;
    state.deliver(*q.advertiser);
  } else {
    state.sell(reward);
  }
  return decision;
}

Decision serve_query_multi_exchange(AllocationState& state,
                                    const ThresholdPolicy& policy,
                                    std::span<const AdvertiserId> eligible,
                                    std::span<const ExchangeBid> bids) {
  const ExchangeBid* highest = nullptr;
  bool any_clears = false;
  for (const ExchangeBid& bid : bids) {
    any_clears = any_clears || bid.clears_reserve;
    if (!bid.is_highest) continue;
    if (highest) {
      throw Error(ErrorCode::kMalformedBidSet,
                  "more than one exchange flagged as highest bidder");
    }
    highest = &bid;
  }
  if (any_clears && !(highest && highest->clears_reserve)) {
    throw Error(ErrorCode::kMalformedBidSet,
                "a bid clears the reserve but the highest bid does not");
  }
  const Quote q = quote(state, policy, eligible);
  Decision decision;
  decision.min_sr_advertiser = q.advertiser;
  decision.reserve = q.reserve;
  if (q.advertiser && !any_clears) {
    decision.target = Decision::Target::kContract;
    decision.advertiser = q.advertiser;
    state.deliver(*q.advertiser);
    return decision;
  }
  if (highest) decision.exchange_id = highest->exchange_id;
  state.sell(highest ? highest->payment : 0.0);
  return decision;
}

double RunReport::fill_rate() const {
  return demand == 0 ? 1.0
                     : static_cast<double>(delivered) /
                           static_cast<double>(demand);
}

RunReport finalize(const AllocationState& state, double penalty,
                   double offset) {
  RunReport report;
  report.exchange_revenue = state.exchange_revenue();
  report.offset = offset;
  report.queries = state.queries();
  report.fill.resize(state.advertisers());
  std::int64_t undelivered = 0;
  for (std::size_t a = 0; a < state.advertisers(); ++a) {
    const auto id = static_cast<AdvertiserId>(a);
    report.delivered += state.delivered(id);
    report.demand += state.demand(id);
    undelivered += state.demand(id) - state.delivered(id);
    report.fill[a] = static_cast<double>(state.delivered(id)) /
                     static_cast<double>(state.demand(id));
  }
  report.penalty_paid = penalty * static_cast<double>(undelivered);
  report.reward = report.exchange_revenue - report.penalty_paid + offset;
  return report;
}

RunReport run_realized(const Instance& instance, const ThresholdPolicy& policy,
                       std::span<const double> rewards, double penalty,
                       double offset) {
  if (static_cast<std::int64_t>(rewards.size()) != instance.total_queries()) {
    throw Error(ErrorCode::kMalformedInput,
                "need exactly one reward per query");
  }
  AllocationState state(
      std::vector<std::int64_t>(instance.demands().begin(),
                                instance.demands().end()));
  std::size_t next = 0;
  for (const QueryGroup& group : instance.groups()) {
    for (std::int64_t i = 0; i < group.count; ++i) {
      serve_query(state, policy, group.eligible, rewards[next++]);
    }
  }
  return finalize(state, penalty, offset);
}

RunReport simulate(const Instance& instance, const ThresholdPolicy& policy,
                   double penalty, double offset, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> rewards(static_cast<std::size_t>(instance.total_queries()));
  for (double& r : rewards) r = policy.distribution().sample(rng);
  RunReport report = run_realized(instance, policy, rewards, penalty, offset);
  report.seed = seed;
  return report;
}

}  // namespace yieldopt
