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

#ifndef YIELDOPT_EXPERIMENTS_HPP_
#define YIELDOPT_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "yieldopt/dist.hpp"
#include "yieldopt/random.hpp"

namespace yieldopt {

// Outcome of one named end-to-end check. `pass` requires both the numeric
// tolerance and the runtime budget.
struct ExperimentResult {
  int id = 0;
  std::string name;
  std::string summary;
  bool pass = false;
  double measured = 0.0;
  double expected = 0.0;
  std::string tolerance;
  std::vector<std::string> details;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct ExperimentInfo {
  int id;
  std::string_view name;
  std::string_view summary;
  double time_limit;
};

const std::vector<ExperimentInfo>& experiments();

// Throws Error(kMalformedInput) for an unknown name.
ExperimentResult run_experiment(std::string_view name);

// "PASS  4 kvv-binary  measured=... expected=... tol=... 1.23s/60s"
std::string format_result(const ExperimentResult& result);

// Random distribution with at most `max_atoms` atoms, support in [0, cap],
// smallest reward 0 when `normalized`, every atom mass >= min_mass.
RewardDistribution random_distribution(Rng& rng, std::size_t max_atoms,
                                       double cap, bool normalized,
                                       double min_mass);

// Random distribution with at most `max_atoms` atoms, support in
// [0, cap] and mean `mean` (0 < mean <= cap).
RewardDistribution random_distribution_with_mean(Rng& rng,
                                                 std::size_t max_atoms,
                                                 double mean, double cap);

// Root seed of every acceptance experiment.
inline constexpr std::uint64_t kAcceptanceSeed = 0x59e1d0b7ULL;

}  // namespace yieldopt

#endif  // YIELDOPT_EXPERIMENTS_HPP_
