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

#ifndef YIELDOPT_RANDOM_HPP_
#define YIELDOPT_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace yieldopt {

// mt19937_64 output is fixed by the standard; the helpers below avoid the
// library-specific std::*_distribution algorithms so that a seed replays
// bit-identically on every toolchain.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng);

// Uniform integer in [0, bound), bound > 0, by rejection sampling.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Seed of the index-th child stream of `root` (splitmix64 over a counter).
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

template <class T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace yieldopt

#endif  // YIELDOPT_RANDOM_HPP_
