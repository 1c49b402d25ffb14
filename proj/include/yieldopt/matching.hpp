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

#ifndef YIELDOPT_MATCHING_HPP_
#define YIELDOPT_MATCHING_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "yieldopt/instances.hpp"

namespace yieldopt {

// Each advertiser a is split into demands[a] unit copies with weight
// weights[a]. Copies are numbered advertiser-major: copy k of advertiser a
// comes after every copy of advertisers < a.
struct MatchingResult {
  double weight = 0.0;
  // Advertiser that received each query, in arrival order.
  std::vector<std::optional<AdvertiserId>> assigned;
};

// Potential 1 - exp(-(1 - x) / f) of a copy with rank x.
double rank_potential(double rank, int f);

// Each query goes to the available eligible copy maximizing
// weight * potential(rank); ties go to the lowest copy number. `ranks` holds
// one value in [0, 1] per copy. Throws Error(kDomainError) for f < 1 or
// mismatched sizes.
MatchingResult perturbed_greedy(const Instance& instance,
                                std::span<const double> weights,
                                std::span<const double> ranks, int f);

// Same with ranks drawn uniformly from a stream seeded by `seed`.
MatchingResult perturbed_greedy(const Instance& instance,
                                std::span<const double> weights, int f,
                                std::uint64_t seed);

// Unweighted special case: lowest rank wins.
MatchingResult ranking(const Instance& instance, std::span<const double> ranks);

struct RatioEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // standard error of the mean
  std::vector<double> trials;
  std::vector<double> weights;  // matched weight per trial
  double opt = 0.0;
};

// Mean matched weight over sum_a weights[a] * n on fresh upper-triangular
// instances (m advertisers of demand n, supply f) and fresh ranks per trial.
// Empty `weights` means unit weights. Trial i uses derive_seed(seed, i).
RatioEstimate empirical_ratio(int m, std::int64_t n, int f,
                              std::span<const double> weights, int trials,
                              std::uint64_t seed);

// f - f exp(-1/f).
double matching_ratio_bound(int f);

}  // namespace yieldopt

#endif  // YIELDOPT_MATCHING_HPP_
