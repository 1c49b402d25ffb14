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

#include "yieldopt/random.hpp"

#include <limits>

#include "yieldopt/errors.hpp"

namespace yieldopt {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedDistribution: return "MalformedDistribution";
    case ErrorCode::kRewardExceedsPenalty: return "RewardExceedsPenalty";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kInfeasibleDecay: return "InfeasibleDecay";
    case ErrorCode::kTooManyThresholds: return "TooManyThresholds";
    case ErrorCode::kMalformedPolicy: return "MalformedPolicy";
    case ErrorCode::kMalformedInstance: return "MalformedInstance";
    case ErrorCode::kNonIntegralGroupSize: return "NonIntegralGroupSize";
    case ErrorCode::kMalformedBidSet: return "MalformedBidSet";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kUndefinedRatio: return "UndefinedRatio";
    case ErrorCode::kMalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Reject the incomplete top block so every residue is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace yieldopt
