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

#ifndef YIELDOPT_DIST_HPP_
#define YIELDOPT_DIST_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "yieldopt/random.hpp"

namespace yieldopt {

// Discrete distribution of the highest exchange bid ("reward").
//
// Atoms are stored in increasing reward order together with the cumulative
// mass q_u = Pr[r <= r_u]; q_0 = 0 is implicit and the last cumulative mass is
// exactly 1. Instances are immutable once constructed.
class RewardDistribution {
 public:
  // Throws Error(kMalformedDistribution) unless the support is strictly
  // increasing and nonnegative and the cumulative masses are strictly
  // increasing in (0, 1]. A final mass within 1e-12 of one is renormalized.
  RewardDistribution(std::vector<double> support, std::vector<double> cum_mass);

  static RewardDistribution point_mass(double reward);
  // Reward 0 with probability q, reward r with probability 1 - q.
  static RewardDistribution binary(double q, double r);
  // Builds cumulative masses from point masses (which must sum to 1).
  static RewardDistribution from_masses(std::vector<double> support,
                                        std::span<const double> masses);

  std::size_t size() const { return support_.size(); }
  std::span<const double> support() const { return support_; }
  std::span<const double> cum_mass() const { return cum_mass_; }

  // Point mass of the atom with zero-based index i.
  double mass(std::size_t i) const;
  // Cumulative mass of the lowest `atoms` atoms; cdf_at(0) == 0.
  double cdf_at(std::size_t atoms) const;
  double min_reward() const { return support_.front(); }
  double max_reward() const { return support_.back(); }
  double mean() const;

  // E[r | r <= r_u] where u = `atoms` counts the lowest atoms, 1 <= u <= d.
  double cond_mean_below(std::size_t atoms) const;

  // Mean of the top p of the probability mass, splitting the atom that
  // straddles the 1 - p quantile. Returns 0 for p = 0.
  double top_quantile_mean(double p) const;
  // Mean of the bottom p of the probability mass (same atom splitting).
  double bottom_quantile_mean(double p) const;

  // Draws r_u with probability q_u - q_{u-1} by CDF inversion.
  double sample(Rng& rng) const;
  // Zero-based atom index for a uniform draw in [0, 1).
  std::size_t atom_for(double uniform) const;

  friend bool operator==(const RewardDistribution&,
                         const RewardDistribution&) = default;

 private:
  std::vector<double> support_;
  std::vector<double> cum_mass_;
};

// Returns `dist` if its largest reward does not exceed the penalty; throws
// Error(kRewardExceedsPenalty) otherwise. Such queries should be routed to
// the exchange (and dropped from the model) before calling in.
RewardDistribution validate(RewardDistribution dist, double penalty);

// A problem shifted so that the smallest reward is zero.
struct NormalizedProblem {
  RewardDistribution dist;
  double penalty;
  // Amount by which the original objective exceeds the shifted one for any
  // allocation of exactly supply * demand queries: (f - 1) * N * r_1.
  double offset;
};

NormalizedProblem normalize(const RewardDistribution& dist, double penalty,
                            double supply, double demand);

}  // namespace yieldopt

#endif  // YIELDOPT_DIST_HPP_
