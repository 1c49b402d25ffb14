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

#ifndef YIELDOPT_RATIO_HPP_
#define YIELDOPT_RATIO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "yieldopt/dist.hpp"

namespace yieldopt {

// Worst-case guarantee of the optimal threshold for a two-point reward
// (0 w.p. q, r w.p. 1 - q), against the offline optimum. Money values are
// per unit of total demand.
struct RatioReport {
  enum class ThresholdCase { kInterior, kBoundary };

  double alg_bound = 0.0;
  double opt = 0.0;
  // Unset when opt == 0 (f == 1 or r == 0).
  std::optional<double> ratio;
  ThresholdCase threshold_case = ThresholdCase::kInterior;
  // Which side of 1/f the low-reward probability falls on (q > 1/f).
  bool q_above_inverse_supply = false;
  // 1 + f q ln(1 - r/c) before clamping at zero.
  double unclamped_threshold = 0.0;
  double threshold = 0.0;

  // Throws Error(kUndefinedRatio) when the ratio is unset.
  double checked_ratio() const;
  std::string case_label() const;
};

// Throws Error(kDomainError) unless f >= 1, 0 < q < 1 and 0 <= r < c.
RatioReport binary_ratio(double f, double q, double r, double c);

// Value of the best grid threshold policy per unit demand, in the original
// (unshifted) reward units: the optimized closed-form objective of the
// normalized problem plus (f - 1) r_1. Validates r_d <= c.
double best_achievable_reward(const RewardDistribution& dist, double penalty,
                              double f, double eps = 1.0 / 200.0);

struct WorstCaseCandidate {
  std::string label;
  RewardDistribution dist;
  double best_reward = 0.0;
};

// Fixed-mean distributions that minimize best_achievable_reward.
struct WorstCaseFamily {
  double mean = 0.0;
  double penalty = 0.0;
  double supply = 0.0;
  std::vector<WorstCaseCandidate> candidates;
  std::size_t argmin = 0;

  double min_reward() const { return candidates[argmin].best_reward; }
};

// Candidates: the point mass at mu; {0, f mu / (f - 1)} with masses
// 1/f, (f - 1)/f when f mu / (f - 1) <= c; and {f mu - (f - 1) c, c} with
// the same masses when f mu - (f - 1) c >= 0 (a point mass at c if both atoms
// coincide). Throws Error(kDomainError) unless 0 < mu <= c and f > 1.
WorstCaseFamily worst_case_distribution(double mean, double penalty, double f,
                                      double eps = 1.0 / 200.0);

}  // namespace yieldopt

#endif  // YIELDOPT_RATIO_HPP_
