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

#ifndef YIELDOPT_ERRORS_HPP_
#define YIELDOPT_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace yieldopt {

enum class ErrorCode {
  kMalformedDistribution,
  kRewardExceedsPenalty,
  kIndexOutOfRange,
  kDomainError,
  kInfeasibleDecay,
  kTooManyThresholds,
  kMalformedPolicy,
  kMalformedInstance,
  kNonIntegralGroupSize,
  kMalformedBidSet,
  kSizeLimit,
  kUndefinedRatio,
  kMalformedInput,
};

// Stable name used in machine-readable diagnostics ("RewardExceedsPenalty").
std::string_view error_name(ErrorCode code);

// All validation failures raised by the library. Internal invariant
// violations are reported with std::logic_error instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace yieldopt

#endif  // YIELDOPT_ERRORS_HPP_
