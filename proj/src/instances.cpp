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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "yieldopt/errors.hpp"
#include "yieldopt/flow.hpp"
#include "yieldopt/random.hpp"

namespace yieldopt {
namespace {

// Keeps k_a * n_b products inside int64 for exact ratio comparisons.
constexpr std::int64_t kMaxDemand = (std::int64_t{1} << 31) - 1;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedInstance, what);
}

std::int64_t integral_group_size(std::int64_t n, double f) {
  const double exact = f * static_cast<double>(n);
  const double rounded = std::round(exact);
  if (!(f > 0.0) || std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact)) {
    throw Error(ErrorCode::kNonIntegralGroupSize,
                "supply factor times demand must be an integer");
  }
  return static_cast<std::int64_t>(rounded);
}

}  // namespace

Instance::Instance(std::vector<std::int64_t> demands,
                   std::vector<QueryGroup> groups,
                   std::optional<double> supply_factor)
    : demands_(std::move(demands)),
      groups_(std::move(groups)),
      supply_(supply_factor) {
  for (std::int64_t n : demands_) {
    if (n <= 0 || n > kMaxDemand) malformed("demands must lie in [1, 2^31)");
    total_demand_ += n;
  }
  const auto m = static_cast<AdvertiserId>(demands_.size());
  for (QueryGroup& group : groups_) {
    if (group.count < 0) malformed("group counts must be nonnegative");
    std::sort(group.eligible.begin(), group.eligible.end());
    if (std::adjacent_find(group.eligible.begin(), group.eligible.end()) !=
        group.eligible.end()) {
      malformed("eligibility lists must not repeat advertisers");
    }
    for (AdvertiserId a : group.eligible) {
      if (a < 0 || a >= m) malformed("eligible advertiser id out of range");
    }
    total_queries_ += group.count;
  }
  if (supply_) {
    const double expected = *supply_ * static_cast<double>(total_demand_);
    if (!(*supply_ >= 0.0) ||
        std::abs(expected - static_cast<double>(total_queries_)) >
            1e-9 * std::max(1.0, expected)) {
      malformed("declared supply factor times total demand (" +
                std::to_string(expected) + ") differs from query count " +
                std::to_string(total_queries_));
    }
  }
}

std::vector<std::size_t> Instance::arrival_groups() const {
  std::vector<std::size_t> order;
  order.reserve(static_cast<std::size_t>(total_queries_));
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    order.insert(order.end(), static_cast<std::size_t>(groups_[g].count), g);
  }
  return order;
}

Instance gen_upper_triangular(int m, std::int64_t n, double f,
                              std::uint64_t seed) {
  if (m < 1 || n < 1) malformed("triangular instance needs m, n >= 1");
  const std::int64_t group_size = integral_group_size(n, f);
  // rank[j] = pi(j) - 1, a uniformly random permutation of 0..m-1.
  std::vector<int> rank(m);
  std::iota(rank.begin(), rank.end(), 0);
  Rng rng(seed);
  shuffle(std::span<int>(rank), rng);
  std::vector<QueryGroup> groups(m);
  for (int i = 0; i < m; ++i) {
    groups[i].count = group_size;
    for (int j = 0; j < m; ++j) {
      if (rank[j] >= i) groups[i].eligible.push_back(j);
    }
  }
  return Instance(std::vector<std::int64_t>(m, n), std::move(groups), f);
}

Instance gen_complete(int m, std::int64_t n, double f) {
  if (m < 1 || n < 1) malformed("complete instance needs m, n >= 1");
  const std::int64_t total = integral_group_size(n * m, f);
  QueryGroup group{total, {}};
  for (int j = 0; j < m; ++j) group.eligible.push_back(j);
  return Instance(std::vector<std::int64_t>(m, n), {std::move(group)}, f);
}

bool supports_supply(const Instance& instance, double f) {
  if (f <= 0.0) return true;
  const int groups = static_cast<int>(instance.groups().size());
  const int m = static_cast<int>(instance.advertisers());
  const int source = 0;
  const int sink = 1 + groups + m;
  MaxFlow flow(sink + 1);
  for (int g = 0; g < groups; ++g) {
    const QueryGroup& group = instance.groups()[g];
    if (group.count == 0 || group.eligible.empty()) continue;
    flow.add_arc(source, 1 + g, static_cast<double>(group.count));
    for (AdvertiserId a : group.eligible) {
      flow.add_arc(1 + g, 1 + groups + a, static_cast<double>(group.count));
    }
  }
  double required = 0.0;
  for (int a = 0; a < m; ++a) {
    const double target = f * static_cast<double>(instance.demands()[a]);
    flow.add_arc(1 + groups + a, sink, target);
    required += target;
  }
  return flow.solve(source, sink) >= required * (1.0 - 1e-12);
}

double supply_factor(const Instance& instance) {
  if (instance.total_demand() == 0) return 0.0;
  double hi = static_cast<double>(instance.total_queries()) /
              static_cast<double>(instance.total_demand());
  if (supports_supply(instance, hi)) return hi;
  double lo = 0.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (supports_supply(instance, mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace yieldopt
