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

#include "yieldopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

#include "yieldopt/engine.hpp"
#include "yieldopt/errors.hpp"
#include "yieldopt/flow.hpp"
#include "yieldopt/random.hpp"

namespace yieldopt {
namespace {

constexpr std::int64_t kMaxExactQueries = 100000;
constexpr double kMaxEnumeration = 1e6;

// Step weights 1/q_{d+1-u}, indexed by zero-based step.
std::vector<double> step_weights(const ThresholdPolicy& policy,
                                 std::int64_t t) {
  const auto bounds = policy.step_boundaries(t);
  const auto& dist = policy.distribution();
  const std::size_t d = policy.segments();
  std::vector<double> weights(static_cast<std::size_t>(t));
  for (std::size_t u = 1; u <= d; ++u) {
    const double w = 1.0 / dist.cdf_at(d + 1 - u);
    for (std::int64_t j = bounds[u - 1]; j < bounds[u]; ++j) {
      weights[static_cast<std::size_t>(j)] = w;
    }
  }
  return weights;
}

}  // namespace

RealizedInstance make_realized(Instance instance, std::vector<double> rewards) {
  if (static_cast<std::int64_t>(rewards.size()) != instance.total_queries()) {
    throw Error(ErrorCode::kMalformedInput,
                "need exactly one reward per query");
  }
  return {std::move(instance), std::move(rewards)};
}

RealizedInstance realize(const Instance& instance,
                         const RewardDistribution& dist, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> rewards(static_cast<std::size_t>(instance.total_queries()));
  for (double& r : rewards) r = dist.sample(rng);
  return {instance, std::move(rewards)};
}

double offline_opt_formula(const RewardDistribution& dist, double f,
                           double demand) {
  if (!(f >= 1.0)) throw Error(ErrorCode::kDomainError, "supply factor below 1");
  if (f == 1.0) return 0.0;
  return (f - 1.0) * demand * dist.top_quantile_mean(1.0 - 1.0 / f);
}

double offline_opt_exact(const RealizedInstance& realized, double penalty) {
  const Instance& instance = realized.instance;
  if (instance.total_queries() > kMaxExactQueries) {
    throw Error(ErrorCode::kSizeLimit, "offline optimum limited to 100000 queries");
  }
  // Every query is sold unless delivered; delivering query q instead of
  // selling it gains c - r_q. Queries of one group with equal rewards are
  // interchangeable and become one node.
  const int m = static_cast<int>(instance.advertisers());
  std::vector<std::map<double, std::int64_t>> classes(instance.groups().size());
  double sold_all = 0.0;
  std::size_t next = 0;
  for (std::size_t g = 0; g < instance.groups().size(); ++g) {
    for (std::int64_t i = 0; i < instance.groups()[g].count; ++i) {
      const double r = realized.rewards[next++];
      sold_all += r;
      if (r < penalty) ++classes[g][r];
    }
  }
  int class_count = 0;
  for (const auto& c : classes) class_count += static_cast<int>(c.size());
  const int source = 0;
  const int sink = 1;
  const int first_advertiser = 2;
  const int first_class = first_advertiser + m;
  MinCostFlow flow(first_class + class_count);
  for (int a = 0; a < m; ++a) {
    flow.add_arc(first_advertiser + a, sink, instance.demands()[a], 0.0);
  }
  int node = first_class;
  for (std::size_t g = 0; g < classes.size(); ++g) {
    for (const auto& [reward, count] : classes[g]) {
      flow.add_arc(source, node, count, reward - penalty);
      for (AdvertiserId a : instance.groups()[g].eligible) {
        flow.add_arc(node, first_advertiser + a, count, 0.0);
      }
      ++node;
    }
  }
  const auto result = flow.solve_min_cost(source, sink);
  return sold_all - penalty * static_cast<double>(instance.total_demand()) -
         result.cost;
}

double offline_opt_relaxed(const RealizedInstance& realized, double penalty) {
  std::vector<double> gains;
  gains.reserve(realized.rewards.size());
  double sold_all = 0.0;
  for (double r : realized.rewards) {
    sold_all += r;
    gains.push_back(std::max(0.0, penalty - r));
  }
  const auto take = std::min<std::size_t>(
      gains.size(), static_cast<std::size_t>(realized.instance.total_demand()));
  std::partial_sort(gains.begin(), gains.begin() + static_cast<std::ptrdiff_t>(take),
                    gains.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t i = 0; i < take; ++i) best += gains[i];
  return sold_all -
         penalty * static_cast<double>(realized.instance.total_demand()) + best;
}

double online_opt_bruteforce(const Instance& instance,
                             const RewardDistribution& dist, double penalty) {
  if (instance.total_demand() > 8 || instance.total_queries() > 12 ||
      dist.size() > 3) {
    throw Error(ErrorCode::kSizeLimit,
                "online optimum limited to demand 8, 12 queries and 3 atoms");
  }
  const auto arrivals = instance.arrival_groups();
  // At most 8 advertisers, each with at most 8 remaining: 4 bits apiece.
  using Key = std::uint64_t;
  std::vector<std::unordered_map<Key, double>> memo(arrivals.size() + 1);
  std::vector<int> remaining(instance.demands().begin(), instance.demands().end());

  auto encode = [&] {
    Key key = 0;
    for (int left : remaining) key = key * 16 + static_cast<Key>(left);
    return key;
  };

  std::function<double(std::size_t)> value = [&](std::size_t i) -> double {
    if (i == arrivals.size()) {
      int left = 0;
      for (int k : remaining) left += k;
      return -penalty * left;
    }
    const Key key = encode();
    if (auto it = memo[i].find(key); it != memo[i].end()) return it->second;
    const double sell = value(i + 1);
    double deliver = -INFINITY;
    for (AdvertiserId a : instance.groups()[arrivals[i]].eligible) {
      if (remaining[a] == 0) continue;
      --remaining[a];
      deliver = std::max(deliver, value(i + 1));
      ++remaining[a];
    }
    double expected = 0.0;
    for (std::size_t u = 0; u < dist.size(); ++u) {
      expected += dist.mass(u) * std::max(dist.support()[u] + sell, deliver);
    }
    memo[i][key] = expected;
    return expected;
  };
  return value(0);
}

double expectation_over_rewards(
    const Instance& instance, const RewardDistribution& dist,
    const std::function<double(std::span<const double>)>& value) {
  const auto queries = static_cast<std::size_t>(instance.total_queries());
  if (std::pow(static_cast<double>(dist.size()), static_cast<double>(queries)) >
      kMaxEnumeration) {
    throw Error(ErrorCode::kSizeLimit, "too many reward realizations");
  }
  const std::size_t d = dist.size();
  std::vector<std::size_t> atom(queries, 0);
  std::vector<double> rewards(queries, dist.support()[0]);
  double total = 0.0;
  while (true) {
    double weight = 1.0;
    for (std::size_t q = 0; q < queries; ++q) weight *= dist.mass(atom[q]);
    total += weight * value(rewards);
    std::size_t q = 0;
    while (q < queries && atom[q] + 1 == d) {
      atom[q] = 0;
      rewards[q] = dist.support()[0];
      ++q;
    }
    if (q == queries) break;
    ++atom[q];
    rewards[q] = dist.support()[atom[q]];
  }
  return total;
}

double expected_policy_reward(const Instance& instance,
                              const RewardDistribution& dist, double penalty,
                              const ThresholdPolicy& policy) {
  const double shift = dist.min_reward();
  const double queries = static_cast<double>(instance.total_queries());
  const double demand = static_cast<double>(instance.total_demand());
  const double offset = shift * (queries - demand);
  std::vector<double> shifted;
  return expectation_over_rewards(
      instance, dist, [&](std::span<const double> rewards) {
        shifted.assign(rewards.begin(), rewards.end());
        for (double& r : shifted) r -= shift;
        return run_realized(instance, policy, shifted, penalty - shift, offset)
            .reward;
      });
}

double expected_offline_opt(const Instance& instance,
                            const RewardDistribution& dist, double penalty) {
  return expectation_over_rewards(
      instance, dist, [&](std::span<const double> rewards) {
        return offline_opt_exact(
            make_realized(instance,
                          std::vector<double>(rewards.begin(), rewards.end())),
            penalty);
      });
}

AdversaryProfile adversary_lp_tight(const ThresholdPolicy& policy, double f,
                                    double demand, std::int64_t t) {
  if (t < 2) throw Error(ErrorCode::kDomainError, "need t >= 2");
  const auto weights = step_weights(policy, t);
  AdversaryProfile profile{t, std::vector<double>(static_cast<std::size_t>(t))};
  const double first = demand / static_cast<double>(t);
  const double scale = f * static_cast<double>(t);
  profile.beta[0] = first;
  double prefix = 0.0;
  for (std::size_t j = 1; j < profile.beta.size(); ++j) {
    prefix += weights[j - 1] * profile.beta[j - 1];
    profile.beta[j] = first - prefix / scale;
  }
  return profile;
}

double adversary_lp_residual(const ThresholdPolicy& policy, double f,
                             double demand, const AdversaryProfile& profile) {
  const auto weights = step_weights(policy, profile.t);
  const double scale = f * static_cast<double>(profile.t);
  double worst =
      std::abs(profile.beta[0] - demand / static_cast<double>(profile.t));
  double prefix = 0.0;
  for (std::size_t j = 1; j < profile.beta.size(); ++j) {
    prefix += weights[j - 1] * profile.beta[j - 1];
    worst = std::max(worst, std::abs(scale * (profile.beta[0] - profile.beta[j]) -
                                     prefix));
  }
  return worst;
}

}  // namespace yieldopt
