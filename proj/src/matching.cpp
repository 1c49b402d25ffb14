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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "yieldopt/errors.hpp"
#include "yieldopt/random.hpp"

namespace yieldopt {

double rank_potential(double rank, int f) {
  return -std::expm1(-(1.0 - rank) / static_cast<double>(f));
}

MatchingResult perturbed_greedy(const Instance& instance,
                                std::span<const double> weights,
                                std::span<const double> ranks, int f) {
  const std::size_t m = instance.advertisers();
  if (f < 1) throw Error(ErrorCode::kDomainError, "supply factor must be >= 1");
  if (weights.size() != m) {
    throw Error(ErrorCode::kDomainError, "need one weight per advertiser");
  }
  if (static_cast<std::int64_t>(ranks.size()) != instance.total_demand()) {
    throw Error(ErrorCode::kDomainError, "need one rank per unit copy");
  }
  // Copies of one advertiser share a weight, so the best available copy is
  // always the one with the lowest rank (then the lowest copy number).
  std::vector<std::vector<double>> order(m);
  std::size_t copy = 0;
  for (std::size_t a = 0; a < m; ++a) {
    auto& ranks_a = order[a];
    ranks_a.assign(ranks.begin() + static_cast<std::ptrdiff_t>(copy),
                   ranks.begin() + static_cast<std::ptrdiff_t>(copy + instance.demands()[a]));
    std::stable_sort(ranks_a.begin(), ranks_a.end());
    copy += static_cast<std::size_t>(instance.demands()[a]);
  }
  std::vector<std::size_t> used(m, 0);

  MatchingResult result;
  result.assigned.reserve(static_cast<std::size_t>(instance.total_queries()));
  for (const QueryGroup& group : instance.groups()) {
    for (std::int64_t i = 0; i < group.count; ++i) {
      std::optional<AdvertiserId> best;
      double best_score = 0.0;
      for (AdvertiserId a : group.eligible) {
        if (used[a] == order[a].size()) continue;
        const double score = weights[a] * rank_potential(order[a][used[a]], f);
        // Strict comparison keeps the lowest advertiser (and copy) on ties.
        if (!best || score > best_score) {
          best = a;
          best_score = score;
        }
      }
      if (best) {
        ++used[*best];
        result.weight += weights[*best];
      }
      result.assigned.push_back(best);
    }
  }
  return result;
}

MatchingResult perturbed_greedy(const Instance& instance,
                                std::span<const double> weights, int f,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> ranks(static_cast<std::size_t>(instance.total_demand()));
  for (double& x : ranks) x = uniform01(rng);
  return perturbed_greedy(instance, weights, ranks, f);
}

MatchingResult ranking(const Instance& instance, std::span<const double> ranks) {
  const std::vector<double> unit(instance.advertisers(), 1.0);
  return perturbed_greedy(instance, unit, ranks, 1);
}

RatioEstimate empirical_ratio(int m, std::int64_t n, int f,
                              std::span<const double> weights, int trials,
                              std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::kDomainError, "need at least one trial");
  std::vector<double> w(weights.begin(), weights.end());
  if (w.empty()) w.assign(static_cast<std::size_t>(m), 1.0);
  if (w.size() != static_cast<std::size_t>(m)) {
    throw Error(ErrorCode::kDomainError, "need one weight per advertiser");
  }
  RatioEstimate estimate;
  estimate.opt = std::accumulate(w.begin(), w.end(), 0.0) * static_cast<double>(n);
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    const Instance instance =
        gen_upper_triangular(m, n, static_cast<double>(f), derive_seed(trial_seed, 0));
    const MatchingResult result =
        perturbed_greedy(instance, w, f, derive_seed(trial_seed, 1));
    estimate.weights.push_back(result.weight);
    estimate.trials.push_back(result.weight / estimate.opt);
  }
  const double count = static_cast<double>(trials);
  estimate.mean =
      std::accumulate(estimate.trials.begin(), estimate.trials.end(), 0.0) / count;
  if (trials > 1) {
    double sq = 0.0;
    for (double x : estimate.trials) sq += (x - estimate.mean) * (x - estimate.mean);
    estimate.std_error = std::sqrt(sq / (count - 1.0) / count);
  }
  return estimate;
}

double matching_ratio_bound(int f) {
  const double x = static_cast<double>(f);
  return -x * std::expm1(-1.0 / x);
}

}  // namespace yieldopt
