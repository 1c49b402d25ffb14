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

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

namespace yieldopt {

MaxFlow::MaxFlow(int nodes, double tolerance)
    : tolerance_(tolerance), adjacency_(nodes) {}

int MaxFlow::add_arc(int from, int to, double capacity) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, capacity});
  arcs_.push_back({from, 0.0, 0.0});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  return id;
}

double MaxFlow::flow_on(int arc) const {
  return arcs_[arc].capacity - arcs_[arc].residual;
}

bool MaxFlow::build_levels(int source, int sink) {
  level_.assign(adjacency_.size(), -1);
  std::queue<int> frontier;
  level_[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int node = frontier.front();
    frontier.pop();
    for (int id : adjacency_[node]) {
      const Arc& arc = arcs_[id];
      if (arc.residual > tolerance_ && level_[arc.to] < 0) {
        level_[arc.to] = level_[node] + 1;
        frontier.push(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

double MaxFlow::push(int node, int sink, double limit) {
  if (node == sink) return limit;
  for (auto& i = cursor_[node]; i < adjacency_[node].size(); ++i) {
    const int id = adjacency_[node][i];
    Arc& arc = arcs_[id];
    if (arc.residual <= tolerance_ || level_[arc.to] != level_[node] + 1) {
      continue;
    }
    const double pushed = push(arc.to, sink, std::min(limit, arc.residual));
    if (pushed > tolerance_) {
      arc.residual -= pushed;
      arcs_[id ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0.0;
}

double MaxFlow::solve(int source, int sink) {
  double total = 0.0;
  while (build_levels(source, sink)) {
    cursor_.assign(adjacency_.size(), 0);
    while (true) {
      const double pushed =
          push(source, sink, std::numeric_limits<double>::infinity());
      if (pushed <= tolerance_) break;
      total += pushed;
    }
  }
  return total;
}

MinCostFlow::MinCostFlow(int nodes) : adjacency_(nodes) {}

int MinCostFlow::add_arc(int from, int to, std::int64_t capacity,
                         double cost) {
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity, cost});
  arcs_.push_back({from, 0, -cost});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  capacity_.push_back(capacity);
  capacity_.push_back(0);
  return id;
}

std::int64_t MinCostFlow::flow_on(int arc) const {
  return capacity_[arc] - arcs_[arc].residual;
}

MinCostFlow::Result MinCostFlow::solve_min_cost(int source, int sink) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kCostTolerance = 1e-12;
  const std::size_t n = adjacency_.size();
  Result result;
  std::vector<double> distance(n);
  std::vector<int> via(n);
  std::vector<char> queued(n);
  while (true) {
    std::fill(distance.begin(), distance.end(), kInf);
    std::fill(via.begin(), via.end(), -1);
    std::fill(queued.begin(), queued.end(), 0);
    std::deque<int> work{source};
    distance[source] = 0.0;
    queued[source] = 1;
    while (!work.empty()) {
      const int node = work.front();
      work.pop_front();
      queued[node] = 0;
      for (int id : adjacency_[node]) {
        const Arc& arc = arcs_[id];
        if (arc.residual <= 0) continue;
        const double candidate = distance[node] + arc.cost;
        if (candidate < distance[arc.to] - kCostTolerance) {
          distance[arc.to] = candidate;
          via[arc.to] = id;
          if (!queued[arc.to]) {
            queued[arc.to] = 1;
            work.push_back(arc.to);
          }
        }
      }
    }
    if (!(distance[sink] < -kCostTolerance)) break;
    std::int64_t bottleneck = std::numeric_limits<std::int64_t>::max();
    for (int node = sink; node != source; node = arcs_[via[node] ^ 1].to) {
      bottleneck = std::min(bottleneck, arcs_[via[node]].residual);
    }
    for (int node = sink; node != source; node = arcs_[via[node] ^ 1].to) {
      arcs_[via[node]].residual -= bottleneck;
      arcs_[via[node] ^ 1].residual += bottleneck;
    }
    result.flow += bottleneck;
    result.cost += static_cast<double>(bottleneck) * distance[sink];
  }
  return result;
}

}  // namespace yieldopt
