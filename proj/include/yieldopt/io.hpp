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

#ifndef YIELDOPT_IO_HPP_
#define YIELDOPT_IO_HPP_

#include <string>

#include "json.hpp"
#include "yieldopt/dist.hpp"
#include "yieldopt/instances.hpp"

namespace yieldopt {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Parse failures and schema violations throw Error(kMalformedInput); the
// constructors' own validation errors pass through unchanged.
Json load_json(const std::string& path);
Json parse_json(const std::string& text);

// {"schema": 1, "support": [...], "cum_mass": [...]}; "masses" may replace
// "cum_mass". A missing "schema" is accepted.
RewardDistribution dist_from_json(const Json& j);
Json to_json(const RewardDistribution& dist);

// {"schema": 1, "demands": [...], "groups": [{"count": k, "eligible": [...]}],
//  "supply_factor": f}; "supply_factor" is optional.
Instance instance_from_json(const Json& j);
Json to_json(const Instance& instance);

// Accepts a path to a JSON file or an inline JSON document.
Json load_json_argument(const std::string& path_or_json);

}  // namespace yieldopt

#endif  // YIELDOPT_IO_HPP_
