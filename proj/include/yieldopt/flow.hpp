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

#ifndef YIELDOPT_FLOW_HPP_
#define YIELDOPT_FLOW_HPP_

#include <cstdint>
#include <vector>

namespace yieldopt {

// Dinic's algorithm on real-valued capacities. Capacities below
// `tolerance` are treated as saturated.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes, double tolerance = 1e-12);

  int add_arc(int from, int to, double capacity);
  double solve(int source, int sink);
  double flow_on(int arc) const;

 private:
  struct Arc {
    int to;
    double residual;
    double capacity;
  };

  bool build_levels(int source, int sink);
  double push(int node, int sink, double limit);

  double tolerance_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

// Successive shortest paths with Bellman-Ford (SPFA) labels. Integral
// capacities, real costs. `solve` pushes flow from source to sink only while
// the cheapest augmenting path has negative cost, so the result is the
// minimum cost over all flow values, which is what a max-weight b-matching
// needs.
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes);

  int add_arc(int from, int to, std::int64_t capacity, double cost);

  struct Result {
    std::int64_t flow = 0;
    double cost = 0.0;
  };
  Result solve_min_cost(int source, int sink);
  std::int64_t flow_on(int arc) const;

 private:
  struct Arc {
    int to;
    std::int64_t residual;
    double cost;
  };

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::int64_t> capacity_;
};

}  // namespace yieldopt

#endif  // YIELDOPT_FLOW_HPP_
