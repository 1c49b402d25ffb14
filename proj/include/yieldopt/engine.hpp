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

#ifndef YIELDOPT_ENGINE_HPP_
#define YIELDOPT_ENGINE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "yieldopt/instances.hpp"
#include "yieldopt/policy.hpp"

namespace yieldopt {

// Delivery progress of every contract during one run.
class AllocationState {
 public:
  explicit AllocationState(std::vector<std::int64_t> demands);

  std::size_t advertisers() const { return demand_.size(); }
  std::int64_t demand(AdvertiserId a) const { return demand_[a]; }
  std::int64_t delivered(AdvertiserId a) const { return delivered_[a]; }
  double exchange_revenue() const { return revenue_; }
  std::int64_t queries() const { return queries_; }
  bool saturated(AdvertiserId a) const { return delivered_[a] == demand_[a]; }

  // SR(a) < SR(b), compared as exact rationals.
  bool less_satisfied(AdvertiserId a, AdvertiserId b) const;

  // Eligible advertiser with the lowest SR, ties to the smallest id.
  std::optional<AdvertiserId> neediest(
      std::span<const AdvertiserId> eligible) const;

  void deliver(AdvertiserId a);
  void sell(double revenue);

 private:
  std::vector<std::int64_t> demand_;
  std::vector<std::int64_t> delivered_;
  double revenue_ = 0.0;
  std::int64_t queries_ = 0;
};

// What the serving layer broadcasts before looking at bids.
struct Quote {
  // Unset when no eligible contract can still take the query.
  std::optional<AdvertiserId> advertiser;
  std::size_t segment = 0;
  // Bids at or below the reserve lose to the contract.
  std::optional<double> reserve;
};

Quote quote(const AllocationState& state, const ThresholdPolicy& policy,
            std::span<const AdvertiserId> eligible);

struct Decision {
  enum class Target { kContract, kExchange };
  Target target = Target::kExchange;
  // Set for contract allocations.
  std::optional<AdvertiserId> advertiser;
  // Lowest-SR eligible advertiser at decision time, when one was unsaturated.
  std::optional<AdvertiserId> min_sr_advertiser;
  std::optional<double> reserve;
  // Winning exchange in the multi-exchange variant.
  std::optional<int> exchange_id;

  friend bool operator==(const Decision&, const Decision&) = default;
};

// Serves one query whose highest exchange bid is `reward`. The query goes to
// the neediest eligible contract iff reward <= reserve of its SR segment.
Decision serve_query(AllocationState& state, const ThresholdPolicy& policy,
                     std::span<const AdvertiserId> eligible, double reward);

// One exchange's answer to the broadcast reserve. `payment` is credited as
// exchange revenue when this exchange wins.
struct ExchangeBid {
  int exchange_id = 0;
  bool clears_reserve = false;
  bool is_highest = false;
  double payment = 0.0;
};

// Same rule using only bid comparisons. Throws Error(kMalformedBidSet) when
// several bids claim to be highest, or a bid clears while the highest does
// not.
Decision serve_query_multi_exchange(AllocationState& state,
                                    const ThresholdPolicy& policy,
                                    std::span<const AdvertiserId> eligible,
                                    std::span<const ExchangeBid> bids);

struct RunReport {
  double reward = 0.0;
  double exchange_revenue = 0.0;
  double penalty_paid = 0.0;
  double offset = 0.0;
  std::int64_t queries = 0;
  std::int64_t delivered = 0;
  std::int64_t demand = 0;
  std::vector<double> fill;  // per-advertiser SR at the end of the run
  std::optional<std::uint64_t> seed;

  double fill_rate() const;
};

// reward = exchange revenue - c * undelivered + offset.
RunReport finalize(const AllocationState& state, double penalty,
                   double offset);

// Serves every query of `instance` in arrival order with the given rewards
// (one per query). Rewards are in the units of the policy's distribution.
RunReport run_realized(const Instance& instance, const ThresholdPolicy& policy,
                       std::span<const double> rewards, double penalty,
                       double offset);

// Draws each query's reward from the policy's distribution with a stream
// seeded by `seed`, then serves the instance.
RunReport simulate(const Instance& instance, const ThresholdPolicy& policy,
                   double penalty, double offset, std::uint64_t seed);

}  // namespace yieldopt

#endif  // YIELDOPT_ENGINE_HPP_
