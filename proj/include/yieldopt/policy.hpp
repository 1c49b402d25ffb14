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

#ifndef YIELDOPT_POLICY_HPP_
#define YIELDOPT_POLICY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "yieldopt/dist.hpp"

namespace yieldopt {

// Thresholds 0 <= s_1 <= ... <= s_d = 1 on the satisfaction ratio, one per
// support atom of the reward distribution they were computed for.
//
// Segments are numbered u = 1..d; segment u covers SR in [s_{u-1}, s_u) with
// s_0 = 0, and a query is given to the neediest contract there iff its
// reward is at most reserve(u) = r_{d+1-u}.
class ThresholdPolicy {
 public:
  // Throws Error(kMalformedPolicy) on a length mismatch, decreasing or
  // out-of-range entries, or a last entry other than exactly 1.
  ThresholdPolicy(RewardDistribution dist, std::vector<double> thresholds);

  const RewardDistribution& distribution() const { return dist_; }
  std::span<const double> thresholds() const { return thresholds_; }
  std::size_t segments() const { return thresholds_.size(); }

  // s_u for u in [0, d]; threshold(0) == 0.
  double threshold(std::size_t segment) const;
  double reserve(std::size_t segment) const;

  // Segment containing SR = delivered / demand, compared exactly. Requires
  // 0 <= delivered < demand.
  std::size_t segment_of(std::int64_t delivered, std::int64_t demand) const;

  // Integer step boundaries b_0 = 0 <= b_1 <= ... <= b_d = t with
  // b_u = round(s_u * t): step j (1-based) lies in segment u iff
  // b_{u-1} < j <= b_u.
  std::vector<std::int64_t> step_boundaries(std::int64_t t) const;

 private:
  RewardDistribution dist_;
  std::vector<double> thresholds_;
};

// Exact test of delivered / demand < threshold for integers
// 0 <= delivered <= demand < 2^31.
bool ratio_below(std::int64_t delivered, std::int64_t demand, double threshold);

// Adversary accounting over a t-step discretization of the satisfaction
// ratio. beta[j - 1] holds beta_j, the expected number of impressions given
// to advertisers whose SR was in the j-th 1/t slice.
struct AdversaryProfile {
  std::int64_t t = 0;
  std::vector<double> beta;

  // alpha_j = t * (beta_j - beta_{j+1}) with beta_{t+1} = 0; zero-based.
  std::vector<double> alpha() const;
};

// Optimal two-point threshold max(0, 1 + f q ln(1 - r/c)).
// Throws Error(kDomainError) unless 0 < q < 1, 0 <= r < c and f >= 1.
double binary_threshold(double f, double q, double r, double c);

// Piecewise-geometric adversary profile: beta_1 = N/t and, across a step in
// segment u, beta shrinks by 1 - (1/q_{d+1-u}) / (t f).
// Throws Error(kInfeasibleDecay) when a nonempty segment has
// 1/q_{d+1-u} > t f.
AdversaryProfile beta_closed_form(const ThresholdPolicy& policy, double f,
                                  double demand, std::int64_t t);

// Worst-case expected reward of the policy at finite t (discrete lower
// bound). Expects a normalized distribution (r_1 = 0, r_d <= c).
double lb_discrete(const ThresholdPolicy& policy, double f, double c,
                   double demand, std::int64_t t);

// Closed-form t -> infinity objective:
//   -cN + f N E[r]
//   + f N sum_u (1 - exp(-sum_{j <= d+1-u} (s_j - s_{j-1}) / (f q_{d+1-j})))
//           (q_u - q_{u-1}) (c - r_u).
// Expects a normalized distribution and a valid threshold vector.
double ub_continuous(const RewardDistribution& dist,
                     std::span<const double> thresholds, double f, double c,
                     double demand);

// Threshold grid spacing: 1/m with m advertisers in scope, else 1/200.
double default_grid(std::optional<std::size_t> advertisers = std::nullopt);

// Grid levels {0, eps, 2 eps, ...} <= 1, always ending in exactly 1.
std::vector<double> threshold_levels(double eps);

// Maximizes ub_continuous over thresholds on the eps-grid (s_d pinned to 1).
// The objective after stage v is linear in the carried decay
// x_v = exp(-E_v), so the best continuation from (stage, level) does not
// depend on how that level was reached; a backward pass over
// (stage, level) is exact on the grid in O(d / eps^2). Ties resolve to the
// lexicographically smallest threshold vector. The objective scales with
// total demand, so the argmax does not depend on it.
ThresholdPolicy optimize_thresholds_dp(const RewardDistribution& dist,
                                       double f, double c, double eps);

// The three-index table g[stage, x, level] with x (the decay carried across a
// segment boundary) floored to multiples of eps/d. Within O(c N eps) of the
// grid optimum; kept for comparison with the exact pass.
ThresholdPolicy optimize_thresholds_bucketed(const RewardDistribution& dist,
                                             double f, double c, double eps);

// Exhaustive search over monotone grid vectors. Test oracle for the DP;
// throws Error(kTooManyThresholds) for d > 4.
ThresholdPolicy optimize_thresholds_grid(const RewardDistribution& dist,
                                         double f, double c, double eps);

}  // namespace yieldopt

#endif  // YIELDOPT_POLICY_HPP_
