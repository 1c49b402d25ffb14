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

#include "yieldopt/ratio.hpp"

#include <cmath>

#include "yieldopt/errors.hpp"
#include "yieldopt/policy.hpp"

namespace yieldopt {

double RatioReport::checked_ratio() const {
  if (!ratio) {
    throw Error(ErrorCode::kUndefinedRatio,
                "offline optimum is zero; only absolute values are defined");
  }
  return *ratio;
}

std::string RatioReport::case_label() const {
  std::string label =
      threshold_case == ThresholdCase::kInterior ? "interior" : "boundary";
  return label + (q_above_inverse_supply ? "/q>1/f" : "/q<=1/f");
}

RatioReport binary_ratio(double f, double q, double r, double c) {
  if (!(f >= 1.0) || !(q > 0.0 && q < 1.0) || !(r >= 0.0 && r < c)) {
    throw Error(ErrorCode::kDomainError,
                "need f >= 1, 0 < q < 1 and 0 <= r < c");
  }
  RatioReport report;
  report.unclamped_threshold = 1.0 + f * q * std::log1p(-r / c);
  report.threshold = std::max(0.0, report.unclamped_threshold);
  const double keep = 1.0 - r / c;
  if (report.unclamped_threshold > 0.0) {
    report.threshold_case = RatioReport::ThresholdCase::kInterior;
    report.alg_bound =
        c * f * ((1.0 - 1.0 / f) - std::pow(keep, 1.0 - q) * std::exp(-1.0 / f));
  } else {
    report.threshold_case = RatioReport::ThresholdCase::kBoundary;
    report.alg_bound = c * f *
                       ((1.0 - 1.0 / f) - (1.0 - q) * keep -
                        q * std::exp(-1.0 / (q * f)));
  }
  report.q_above_inverse_supply = q > 1.0 / f;
  report.opt = report.q_above_inverse_supply ? f * (1.0 - q) * r
                                             : f * (1.0 - 1.0 / f) * r;
  if (report.opt > 0.0) report.ratio = report.alg_bound / report.opt;
  return report;
}

double best_achievable_reward(const RewardDistribution& dist, double penalty,
                              double f, double eps) {
  const NormalizedProblem problem =
      normalize(validate(dist, penalty), penalty, f, 1.0);
  const ThresholdPolicy policy =
      optimize_thresholds_dp(problem.dist, f, problem.penalty, eps);
  return ub_continuous(problem.dist, policy.thresholds(), f, problem.penalty,
                       1.0) +
         problem.offset;
}

WorstCaseFamily worst_case_distribution(double mean, double penalty, double f,
                                      double eps) {
  if (!(mean > 0.0 && mean <= penalty) || !(f > 1.0)) {
    throw Error(ErrorCode::kDomainError, "need 0 < mean <= penalty and f > 1");
  }
  WorstCaseFamily family{mean, penalty, f, {}, 0};
  auto add = [&](std::string label, RewardDistribution dist) {
    const double value = best_achievable_reward(dist, penalty, f, eps);
    family.candidates.push_back({std::move(label), std::move(dist), value});
  };
  add("point", RewardDistribution::point_mass(mean));
  const double low_mass = 1.0 / f;
  const double high = f * mean / (f - 1.0);
  if (high <= penalty) {
    add("zero-high",
        RewardDistribution::from_masses({0.0, high}, std::vector{low_mass, 1.0 - low_mass}));
  }
  const double low = f * mean - (f - 1.0) * penalty;
  if (low >= 0.0) {
    if (low >= penalty) {
      add("low-penalty", RewardDistribution::point_mass(penalty));
    } else {
      add("low-penalty", RewardDistribution::from_masses(
                             {low, penalty}, std::vector{low_mass, 1.0 - low_mass}));
    }
  }
  for (std::size_t i = 1; i < family.candidates.size(); ++i) {
    if (family.candidates[i].best_reward < family.candidates[family.argmin].best_reward) {
      family.argmin = i;
    }
  }
  return family;
}

}  // namespace yieldopt
