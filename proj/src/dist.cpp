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

#include "yieldopt/dist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "yieldopt/errors.hpp"

namespace yieldopt {
namespace {

constexpr double kMassTolerance = 1e-12;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedDistribution, what);
}

}  // namespace

RewardDistribution::RewardDistribution(std::vector<double> support,
                                       std::vector<double> cum_mass)
    : support_(std::move(support)), cum_mass_(std::move(cum_mass)) {
  if (support_.empty()) malformed("distribution has no atoms");
  if (support_.size() != cum_mass_.size()) {
    malformed("support and cum_mass lengths differ");
  }
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (!std::isfinite(support_[i]) || support_[i] < 0.0) {
      malformed("rewards must be finite and nonnegative");
    }
    if (i > 0 && !(support_[i] > support_[i - 1])) {
      malformed("support must be strictly increasing");
    }
  }
  const double total = cum_mass_.back();
  if (!(std::abs(total - 1.0) <= kMassTolerance)) {
    malformed("final cumulative mass must equal 1");
  }
  for (double& q : cum_mass_) q /= total;
  cum_mass_.back() = 1.0;
  double previous = 0.0;
  for (double q : cum_mass_) {
    if (!std::isfinite(q) || !(q > previous) || q > 1.0) {
      malformed("cumulative masses must be strictly increasing in (0, 1]");
    }
    previous = q;
  }
}

RewardDistribution RewardDistribution::point_mass(double reward) {
  return RewardDistribution({reward}, {1.0});
}

RewardDistribution RewardDistribution::binary(double q, double r) {
  return RewardDistribution({0.0, r}, {q, 1.0});
}

RewardDistribution RewardDistribution::from_masses(
    std::vector<double> support, std::span<const double> masses) {
  std::vector<double> cum(masses.size());
  double running = 0.0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    running += masses[i];
    cum[i] = running;
  }
  return RewardDistribution(std::move(support), std::move(cum));
}

double RewardDistribution::mass(std::size_t i) const {
  if (i >= size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "atom index out of range");
  }
  return cum_mass_[i] - (i == 0 ? 0.0 : cum_mass_[i - 1]);
}

double RewardDistribution::cdf_at(std::size_t atoms) const {
  if (atoms > size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "atom count out of range");
  }
  return atoms == 0 ? 0.0 : cum_mass_[atoms - 1];
}

double RewardDistribution::mean() const { return cond_mean_below(size()); }

double RewardDistribution::cond_mean_below(std::size_t atoms) const {
  if (atoms < 1 || atoms > size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "cond_mean_below needs 1 <= u <= d, got " +
                    std::to_string(atoms));
  }
  double weighted = 0.0;
  for (std::size_t i = 0; i < atoms; ++i) weighted += mass(i) * support_[i];
  return weighted / cum_mass_[atoms - 1];
}

double RewardDistribution::top_quantile_mean(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "quantile mass must lie in [0, 1]");
  }
  if (p == 0.0) return 0.0;
  double remaining = p;
  double weighted = 0.0;
  for (std::size_t i = size(); i-- > 0 && remaining > 0.0;) {
    const double take = std::min(mass(i), remaining);
    weighted += take * support_[i];
    remaining -= take;
  }
  return weighted / p;
}

double RewardDistribution::bottom_quantile_mean(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "quantile mass must lie in [0, 1]");
  }
  if (p == 0.0) return 0.0;
  double remaining = p;
  double weighted = 0.0;
  for (std::size_t i = 0; i < size() && remaining > 0.0; ++i) {
    const double take = std::min(mass(i), remaining);
    weighted += take * support_[i];
    remaining -= take;
  }
  return weighted / p;
}

std::size_t RewardDistribution::atom_for(double uniform) const {
  const auto it =
      std::upper_bound(cum_mass_.begin(), cum_mass_.end(), uniform);
  return std::min<std::size_t>(it - cum_mass_.begin(), size() - 1);
}

double RewardDistribution::sample(Rng& rng) const {
  return support_[atom_for(uniform01(rng))];
}

RewardDistribution validate(RewardDistribution dist, double penalty) {
  if (!std::isfinite(penalty) || penalty < 0.0) {
    throw Error(ErrorCode::kDomainError, "penalty must be finite and >= 0");
  }
  if (dist.max_reward() > penalty) {
    throw Error(ErrorCode::kRewardExceedsPenalty,
                "largest reward " + std::to_string(dist.max_reward()) +
                    " exceeds penalty " + std::to_string(penalty) +
                    "; route such queries to the exchange before modelling");
  }
  return dist;
}

NormalizedProblem normalize(const RewardDistribution& dist, double penalty,
                            double supply, double demand) {
  RewardDistribution checked = validate(dist, penalty);
  const double shift = checked.min_reward();
  if (shift == 0.0) return {std::move(checked), penalty, 0.0};
  std::vector<double> support(checked.support().begin(),
                              checked.support().end());
  for (double& r : support) r -= shift;
  support.front() = 0.0;
  std::vector<double> cum(checked.cum_mass().begin(), checked.cum_mass().end());
  return {RewardDistribution(std::move(support), std::move(cum)),
          penalty - shift, (supply - 1.0) * demand * shift};
}

}  // namespace yieldopt
