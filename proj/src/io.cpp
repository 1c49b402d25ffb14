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

#include "yieldopt/io.hpp"

#include <fstream>
#include <sstream>

#include "yieldopt/errors.hpp"

namespace yieldopt {
namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedInput, what);
}

void check_schema(const Json& j) {
  if (!j.is_object()) malformed("expected a JSON object");
  if (j.contains("schema") && j["schema"] != kSchemaVersion) {
    malformed("unsupported schema version");
  }
}

template <class T>
std::vector<T> number_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    malformed(std::string("missing array \"") + key + "\"");
  }
  std::vector<T> out;
  for (const Json& v : j[key]) {
    if (!v.is_number()) malformed(std::string("non-numeric entry in \"") + key + "\"");
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) {
        malformed(std::string("non-integer entry in \"") + key + "\"");
      }
    }
    out.push_back(v.get<T>());
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(e.what());
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

Json load_json_argument(const std::string& path_or_json) {
  const auto first = path_or_json.find_first_not_of(" \t\r\n");
  if (first != std::string::npos &&
      (path_or_json[first] == '{' || path_or_json[first] == '[')) {
    return parse_json(path_or_json);
  }
  return load_json(path_or_json);
}

RewardDistribution dist_from_json(const Json& j) {
  check_schema(j);
  auto support = number_list<double>(j, "support");
  if (j.contains("cum_mass")) {
    if (j.contains("masses")) malformed("give either \"cum_mass\" or \"masses\"");
    return RewardDistribution(std::move(support), number_list<double>(j, "cum_mass"));
  }
  const auto masses = number_list<double>(j, "masses");
  return RewardDistribution::from_masses(std::move(support), masses);
}

Json to_json(const RewardDistribution& dist) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["support"] = std::vector<double>(dist.support().begin(), dist.support().end());
  j["cum_mass"] =
      std::vector<double>(dist.cum_mass().begin(), dist.cum_mass().end());
  return j;
}

Instance instance_from_json(const Json& j) {
  check_schema(j);
  auto demands = number_list<std::int64_t>(j, "demands");
  if (!j.contains("groups") || !j["groups"].is_array()) {
    malformed("missing array \"groups\"");
  }
  std::vector<QueryGroup> groups;
  for (const Json& g : j["groups"]) {
    if (!g.is_object() || !g.contains("count") || !g["count"].is_number_integer()) {
      malformed("each group needs an integer \"count\"");
    }
    groups.push_back({g["count"].get<std::int64_t>(),
                      number_list<AdvertiserId>(g, "eligible")});
  }
  std::optional<double> supply;
  if (j.contains("supply_factor") && !j["supply_factor"].is_null()) {
    if (!j["supply_factor"].is_number()) malformed("\"supply_factor\" must be a number");
    supply = j["supply_factor"].get<double>();
  }
  return Instance(std::move(demands), std::move(groups), supply);
}

Json to_json(const Instance& instance) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["demands"] = std::vector<std::int64_t>(instance.demands().begin(),
                                           instance.demands().end());
  Json groups = Json::array();
  for (const QueryGroup& g : instance.groups()) {
    groups.push_back({{"count", g.count}, {"eligible", g.eligible}});
  }
  j["groups"] = std::move(groups);
  if (instance.declared_supply_factor()) {
    j["supply_factor"] = *instance.declared_supply_factor();
  }
  return j;
}

}  // namespace yieldopt
