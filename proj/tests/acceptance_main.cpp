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

// Runs every acceptance experiment and prints one PASS/FAIL line each.
// Exits nonzero if any experiment fails.

#include <iostream>

#include "yieldopt/experiments.hpp"

int main() {
  int failures = 0;
  for (const auto& info : yieldopt::experiments()) {
    const auto result = yieldopt::run_experiment(info.name);
    std::cout << yieldopt::format_result(result) << '\n' << std::flush;
    if (!result.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all acceptance criteria pass\n"
                              : std::to_string(failures) + " acceptance criteria fail\n");
  return failures == 0 ? 0 : 1;
}
