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

#ifndef YIELDOPT_INSTANCES_HPP_
#define YIELDOPT_INSTANCES_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace yieldopt {

using AdvertiserId = std::int32_t;

// A run of identical queries: `count` arrivals, each connected to the same
// sorted set of advertisers.
struct QueryGroup {
  std::int64_t count = 0;
  std::vector<AdvertiserId> eligible;

  friend bool operator==(const QueryGroup&, const QueryGroup&) = default;
};

// Contract demands plus the arrival sequence. Groups arrive in order.
class Instance {
 public:
  // Throws Error(kMalformedInstance) on nonpositive demands, eligibility ids
  // out of range or repeated, negative counts, or a declared supply factor f
  // for which f * N is not the (integral) total query count.
  Instance(std::vector<std::int64_t> demands, std::vector<QueryGroup> groups,
           std::optional<double> supply_factor = std::nullopt);

  std::size_t advertisers() const { return demands_.size(); }
  std::span<const std::int64_t> demands() const { return demands_; }
  std::span<const QueryGroup> groups() const { return groups_; }
  std::optional<double> declared_supply_factor() const { return supply_; }
  std::int64_t total_demand() const { return total_demand_; }
  std::int64_t total_queries() const { return total_queries_; }

  // Group index of every query, in arrival order.
  std::vector<std::size_t> arrival_groups() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<std::int64_t> demands_;
  std::vector<QueryGroup> groups_;
  std::optional<double> supply_;
  std::int64_t total_demand_ = 0;
  std::int64_t total_queries_ = 0;
};

// Upper-triangular hard instance: m advertisers of demand n and m groups of
// f * n queries; with a seeded random permutation pi of the advertisers,
// group i (1-based) reaches advertisers j with pi(j) >= i.
// Throws Error(kNonIntegralGroupSize) when f * n is not an integer.
Instance gen_upper_triangular(int m, std::int64_t n, double f,
                              std::uint64_t seed);

// m advertisers of demand n, one group of f * m * n queries reaching all.
Instance gen_complete(int m, std::int64_t n, double f);

// True iff a fractional allocation delivers f * n_a to every advertiser.
bool supports_supply(const Instance& instance, double f);

// Largest f such that supports_supply holds, by bisection on max-flow
// feasibility down to a 1e-9 bracket. Ignores the declared factor.
double supply_factor(const Instance& instance);

}  // namespace yieldopt

#endif  // YIELDOPT_INSTANCES_HPP_
