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

#ifndef YIELDOPT_ORACLE_HPP_
#define YIELDOPT_ORACLE_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "yieldopt/dist.hpp"
#include "yieldopt/instances.hpp"
#include "yieldopt/policy.hpp"

namespace yieldopt {

// An instance with the exchange reward of every query, in arrival order.
struct RealizedInstance {
  Instance instance;
  std::vector<double> rewards;
};

// Throws Error(kMalformedInput) if the reward count does not match.
RealizedInstance make_realized(Instance instance, std::vector<double> rewards);

// Draws every query's reward from `dist` using a stream seeded by `seed`.
RealizedInstance realize(const Instance& instance,
                         const RewardDistribution& dist, std::uint64_t seed);

// Expected offline optimum for large demands: (f - 1) N times the mean of the
// top 1 - 1/f of the reward mass. Requires f >= 1.
double offline_opt_formula(const RewardDistribution& dist, double f,
                           double demand);

// Largest exchange revenue minus penalty over all allocations of the realized
// queries, as a max-weight b-matching (queries of one group with equal
// rewards share an arc). Throws Error(kSizeLimit) above 100000 queries.
double offline_opt_exact(const RealizedInstance& realized, double penalty);

// Ignores eligibility: sum of all rewards - c N + the N largest values of
// max(0, c - r). Never below offline_opt_exact.
double offline_opt_relaxed(const RealizedInstance& realized, double penalty);

// Expected reward of the best online policy that knows the distribution and
// the arrival sequence, by backward induction over (query index, remaining
// demand). Throws Error(kSizeLimit) when total demand exceeds 8, there are
// more than 12 queries, or the distribution has more than 3 atoms.
double online_opt_bruteforce(const Instance& instance,
                             const RewardDistribution& dist, double penalty);

// Exact expectation of `value(rewards)` over every realization of the query
// rewards (d^queries terms). Throws Error(kSizeLimit) above 10^6 terms.
double expectation_over_rewards(
    const Instance& instance, const RewardDistribution& dist,
    const std::function<double(std::span<const double>)>& value);

// Exact expected reward of the threshold policy on `instance` with rewards
// drawn from `dist` (the original, unshifted distribution). `policy` must
// have been built for normalize(dist, penalty, ...).
double expected_policy_reward(const Instance& instance,
                              const RewardDistribution& dist, double penalty,
                              const ThresholdPolicy& policy);

// Exact expectation of offline_opt_exact.
double expected_offline_opt(const Instance& instance,
                            const RewardDistribution& dist, double penalty);

// Adversary profile with every accounting constraint tight, solved forward:
// beta_1 = N/t and f t (beta_1 - beta_{j+1}) = sum_{l <= j} w_l beta_l, where
// w_l = 1/q_{d+1-u} for the segment u holding step l.
AdversaryProfile adversary_lp_tight(const ThresholdPolicy& policy, double f,
                                    double demand, std::int64_t t);

// Largest absolute violation of the tight constraints above (including
// beta_1 = N/t) by `profile`.
double adversary_lp_residual(const ThresholdPolicy& policy, double f,
                             double demand, const AdversaryProfile& profile);

}  // namespace yieldopt

#endif  // YIELDOPT_ORACLE_HPP_
