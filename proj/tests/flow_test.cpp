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

#include "yieldopt/flow.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "yieldopt/random.hpp"

namespace yieldopt {
namespace {

TEST(MaxFlowTest, SmallNetwork) {
  MaxFlow flow(4);
  flow.add_arc(0, 1, 3.0);
  flow.add_arc(0, 2, 2.0);
  flow.add_arc(1, 2, 1.0);
  const int a = flow.add_arc(1, 3, 2.0);
  flow.add_arc(2, 3, 3.0);
  EXPECT_NEAR(flow.solve(0, 3), 5.0, 1e-12);
  EXPECT_NEAR(flow.flow_on(a), 2.0, 1e-12);
}

TEST(MaxFlowTest, FractionalCapacities) {
  MaxFlow flow(3);
  flow.add_arc(0, 1, 0.25);
  flow.add_arc(1, 2, 0.75);
  flow.add_arc(0, 2, 1.0 / 3.0);
  EXPECT_NEAR(flow.solve(0, 2), 0.25 + 1.0 / 3.0, 1e-15);
}

// Max-weight b-matching by enumeration on random tiny bipartite graphs.
TEST(MinCostFlowTest, MatchesEnumerationOnTinyGraphs) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int left = 1 + static_cast<int>(uniform_below(rng, 4));
    const int right = 1 + static_cast<int>(uniform_below(rng, 3));
    std::vector<int> cap(static_cast<std::size_t>(right));
    for (int& c : cap) c = 1 + static_cast<int>(uniform_below(rng, 2));
    std::vector<double> gain(static_cast<std::size_t>(left));
    for (double& g : gain) g = uniform01(rng) - 0.3;
    std::vector<std::vector<int>> edges(static_cast<std::size_t>(left));
    for (int i = 0; i < left; ++i) {
      for (int j = 0; j < right; ++j) {
        if (uniform01(rng) < 0.6) edges[i].push_back(j);
      }
    }
    MinCostFlow flow(2 + left + right);
    for (int i = 0; i < left; ++i) {
      flow.add_arc(0, 2 + i, 1, -gain[i]);
      for (int j : edges[i]) flow.add_arc(2 + i, 2 + left + j, 1, 0.0);
    }
    for (int j = 0; j < right; ++j) flow.add_arc(2 + left + j, 1, cap[j], 0.0);
    const double got = -flow.solve_min_cost(0, 1).cost;

    double best = 0.0;
    std::vector<int> choice(static_cast<std::size_t>(left), -1);
    std::function<void(int, std::vector<int>&, double)> go = [&](int i, std::vector<int>& used,
                                                                 double acc) {
      if (i == left) {
        best = std::max(best, acc);
        return;
      }
      go(i + 1, used, acc);
      for (int j : edges[i]) {
        if (used[j] < cap[j]) {
          ++used[j];
          go(i + 1, used, acc + gain[i]);
          --used[j];
        }
      }
    };
    std::vector<int> used(static_cast<std::size_t>(right), 0);
    go(0, used, 0.0);
    EXPECT_NEAR(got, best, 1e-12) << "trial " << trial;
  }
}

}  // namespace
}  // namespace yieldopt
