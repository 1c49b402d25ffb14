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

#include "yieldopt/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "yieldopt/errors.hpp"

namespace yieldopt {
namespace {

__extension__ typedef __int128 Int128;

void require_normalized(const RewardDistribution& dist, double c) {
  if (dist.min_reward() != 0.0) {
    throw Error(ErrorCode::kDomainError,
                "objective expects a normalized distribution (r_1 = 0)");
  }
  if (dist.max_reward() > c) {
    throw Error(ErrorCode::kRewardExceedsPenalty,
                "largest reward exceeds the penalty");
  }
}

void require_supply(double f) {
  if (!(f >= 1.0) || !std::isfinite(f)) {
    throw Error(ErrorCode::kDomainError, "supply factor must be >= 1");
  }
}

void check_thresholds(std::size_t atoms, std::span<const double> s) {
  if (s.size() != atoms) {
    throw Error(ErrorCode::kMalformedPolicy,
                "need one threshold per support atom");
  }
  double previous = 0.0;
  for (double v : s) {
    if (!(v >= previous) || v > 1.0) {
      throw Error(ErrorCode::kMalformedPolicy,
                  "thresholds must be non-decreasing within [0, 1]");
    }
    previous = v;
  }
  if (s.back() != 1.0) {
    throw Error(ErrorCode::kMalformedPolicy, "last threshold must equal 1");
  }
}

// -cN + f N E[r], shared by both objectives.
double baseline(const RewardDistribution& dist, double f, double c,
                double demand) {
  return -c * demand + f * demand * dist.mean();
}

// Quantities indexed by stage v = 1..d, where stage v is segment u = v and
// draws on atom d + 1 - v: rate_v = 1 / (f q_{d+1-v}) and
// gain_v = (q_{d+1-v} - q_{d-v}) (c - r_{d+1-v}).
struct Stages {
  std::vector<double> rate;
  std::vector<double> gain;
};

Stages stages_of(const RewardDistribution& dist, double f, double c) {
  const std::size_t d = dist.size();
  Stages st{std::vector<double>(d + 1), std::vector<double>(d + 1)};
  for (std::size_t v = 1; v <= d; ++v) {
    const std::size_t atom = d - v;  // zero-based index of r_{d+1-v}
    st.rate[v] = 1.0 / (f * dist.cdf_at(atom + 1));
    st.gain[v] = dist.mass(atom) * (c - dist.support()[atom]);
  }
  return st;
}

}  // namespace

ThresholdPolicy::ThresholdPolicy(RewardDistribution dist,
                                 std::vector<double> thresholds)
    : dist_(std::move(dist)), thresholds_(std::move(thresholds)) {
  check_thresholds(dist_.size(), thresholds_);
}

double ThresholdPolicy::threshold(std::size_t segment) const {
  if (segment > segments()) {
    throw Error(ErrorCode::kIndexOutOfRange, "segment out of range");
  }
  return segment == 0 ? 0.0 : thresholds_[segment - 1];
}

double ThresholdPolicy::reserve(std::size_t segment) const {
  if (segment < 1 || segment > segments()) {
    throw Error(ErrorCode::kIndexOutOfRange, "segment out of range");
  }
  return dist_.support()[segments() - segment];
}

bool ratio_below(std::int64_t delivered, std::int64_t demand,
                 double threshold) {
  if (!(threshold > 0.0)) return false;
  if (delivered == 0) return true;
  if (threshold >= 1.0) return delivered < demand;
  // delivered / demand >= 2^-31 here, so tinier thresholds cannot exceed it.
  if (threshold < 0x1.0p-32) return false;
  int exponent = 0;
  const double fraction = std::frexp(threshold, &exponent);
  // threshold = mantissa * 2^(exponent - 53) with an integral mantissa.
  const auto mantissa = static_cast<Int128>(std::ldexp(fraction, 53));
  const int shift = 53 - exponent;  // in [53, 85]
  const Int128 lhs = static_cast<Int128>(delivered) << shift;
  const Int128 rhs = mantissa * demand;
  return lhs < rhs;
}

std::size_t ThresholdPolicy::segment_of(std::int64_t delivered,
                                        std::int64_t demand) const {
  if (delivered < 0 || delivered >= demand) {
    throw Error(ErrorCode::kDomainError,
                "segment lookup needs 0 <= delivered < demand");
  }
  for (std::size_t u = 1; u <= segments(); ++u) {
    if (ratio_below(delivered, demand, thresholds_[u - 1])) return u;
  }
  return segments();  // unreachable: s_d = 1 exceeds every SR < 1
}

std::vector<std::int64_t> ThresholdPolicy::step_boundaries(
    std::int64_t t) const {
  std::vector<std::int64_t> bounds(segments() + 1, 0);
  for (std::size_t u = 1; u <= segments(); ++u) {
    bounds[u] = std::max<std::int64_t>(
        bounds[u - 1],
        std::llround(thresholds_[u - 1] * static_cast<double>(t)));
  }
  bounds.back() = t;
  return bounds;
}

std::vector<double> AdversaryProfile::alpha() const {
  std::vector<double> out(beta.size());
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const double next = j + 1 < beta.size() ? beta[j + 1] : 0.0;
    out[j] = static_cast<double>(t) * (beta[j] - next);
  }
  return out;
}

double binary_threshold(double f, double q, double r, double c) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::kDomainError, "binary threshold needs 0 < q < 1");
  }
  if (!(r >= 0.0 && r < c)) {
    throw Error(ErrorCode::kDomainError, "binary threshold needs 0 <= r < c");
  }
  require_supply(f);
  return std::max(0.0, 1.0 + f * q * std::log1p(-r / c));
}

AdversaryProfile beta_closed_form(const ThresholdPolicy& policy, double f,
                                  double demand, std::int64_t t) {
  require_supply(f);
  if (t < 1) throw Error(ErrorCode::kDomainError, "t must be positive");
  const RewardDistribution& dist = policy.distribution();
  const std::size_t d = dist.size();
  const auto bounds = policy.step_boundaries(t);
  const double td = static_cast<double>(t);
  std::vector<double> decay(d + 1);
  for (std::size_t u = 1; u <= d; ++u) {
    const double weight = 1.0 / dist.cdf_at(d + 1 - u);
    if (bounds[u] > bounds[u - 1] && weight > td * f) {
      throw Error(ErrorCode::kInfeasibleDecay,
                  "grid t = " + std::to_string(t) +
                      " too coarse for segment " + std::to_string(u));
    }
    decay[u] = 1.0 - weight / (td * f);
  }
  // prefix[u] = (N/t) * prod_{v < u} decay_v^(b_v - b_{v-1}).
  std::vector<double> prefix(d + 1);
  prefix[1] = demand / td;
  for (std::size_t u = 2; u <= d; ++u) {
    prefix[u] = prefix[u - 1] *
                std::pow(decay[u - 1],
                         static_cast<double>(bounds[u - 1] - bounds[u - 2]));
  }
  AdversaryProfile profile{t, std::vector<double>(static_cast<std::size_t>(t))};
  profile.beta[0] = demand / td;
  std::size_t u = 1;
  for (std::int64_t j = 2; j <= t; ++j) {
    const std::int64_t step = j - 1;
    while (step > bounds[u]) ++u;
    profile.beta[j - 1] =
        prefix[u] *
        std::pow(decay[u], static_cast<double>(step - bounds[u - 1]));
  }
  return profile;
}

double lb_discrete(const ThresholdPolicy& policy, double f, double c,
                   double demand, std::int64_t t) {
  const RewardDistribution& dist = policy.distribution();
  require_normalized(dist, c);
  const AdversaryProfile profile = beta_closed_form(policy, f, demand, t);
  const auto bounds = policy.step_boundaries(t);
  const std::size_t d = dist.size();
  double total = baseline(dist, f, c, demand);
  for (std::size_t u = 1; u <= d; ++u) {
    double mass = 0.0;
    for (std::int64_t j = bounds[u - 1] + 1; j <= bounds[u]; ++j) {
      mass += profile.beta[j - 1];
    }
    total += mass * (c - dist.cond_mean_below(d + 1 - u));
  }
  return total;
}

double ub_continuous(const RewardDistribution& dist,
                     std::span<const double> thresholds, double f, double c,
                     double demand) {
  require_normalized(dist, c);
  require_supply(f);
  check_thresholds(dist.size(), thresholds);
  const std::size_t d = dist.size();
  // exponent[v] = sum_{j <= v} (s_j - s_{j-1}) / (f q_{d+1-j}).
  std::vector<double> exponent(d + 1, 0.0);
  double previous = 0.0;
  for (std::size_t j = 1; j <= d; ++j) {
    exponent[j] = exponent[j - 1] +
                  (thresholds[j - 1] - previous) / (f * dist.cdf_at(d + 1 - j));
    previous = thresholds[j - 1];
  }
  double total = baseline(dist, f, c, demand);
  for (std::size_t u = 1; u <= d; ++u) {
    total += f * demand * -std::expm1(-exponent[d + 1 - u]) *
             dist.mass(u - 1) * (c - dist.support()[u - 1]);
  }
  return total;
}

double default_grid(std::optional<std::size_t> advertisers) {
  if (advertisers && *advertisers > 0) {
    return 1.0 / static_cast<double>(*advertisers);
  }
  return 1.0 / 200.0;
}

std::vector<double> threshold_levels(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw Error(ErrorCode::kDomainError, "grid spacing must lie in (0, 1]");
  }
  std::vector<double> levels;
  for (std::int64_t k = 0;; ++k) {
    const double level = static_cast<double>(k) * eps;
    if (level > 1.0 - 1e-9) break;
    levels.push_back(level);
  }
  levels.push_back(1.0);
  return levels;
}

ThresholdPolicy optimize_thresholds_dp(const RewardDistribution& dist,
                                       double f, double c, double eps) {
  require_normalized(dist, c);
  require_supply(f);
  const std::size_t d = dist.size();
  const auto levels = threshold_levels(eps);
  const std::size_t top = levels.size() - 1;
  if (d == 1) return ThresholdPolicy(dist, {1.0});
  const Stages st = stages_of(dist, f, c);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // cost[v][k]: least remaining sum_{w > v} gain_w x_w / x_v after stage v
  // ends at level k; the objective is baseline + f N (sum gain - cost[0][0]).
  std::vector<std::vector<double>> cost(
      d + 1, std::vector<double>(levels.size(), kInf));
  std::vector<std::vector<std::size_t>> next(
      d, std::vector<std::size_t>(levels.size(), top));
  cost[d][top] = 0.0;
  for (std::size_t v = d; v-- > 0;) {
    const std::size_t last = v == 0 ? 0 : top;
    for (std::size_t k = 0; k <= last; ++k) {
      double best = kInf;
      for (std::size_t k2 = k; k2 <= top; ++k2) {
        if (cost[v + 1][k2] == kInf) continue;
        const double carry =
            std::exp(-(levels[k2] - levels[k]) * st.rate[v + 1]);
        const double value = carry * (st.gain[v + 1] + cost[v + 1][k2]);
        if (value < best) {
          best = value;
          next[v][k] = k2;
        }
      }
      cost[v][k] = best;
    }
  }
  std::vector<double> thresholds(d);
  std::size_t k = 0;
  for (std::size_t v = 0; v < d; ++v) {
    k = next[v][k];
    thresholds[v] = levels[k];
  }
  thresholds.back() = 1.0;
  return ThresholdPolicy(dist, std::move(thresholds));
}

ThresholdPolicy optimize_thresholds_bucketed(const RewardDistribution& dist,
                                             double f, double c, double eps) {
  require_normalized(dist, c);
  require_supply(f);
  const std::size_t d = dist.size();
  const auto levels = threshold_levels(eps);
  const std::size_t top = levels.size() - 1;
  if (d == 1) return ThresholdPolicy(dist, {1.0});
  const Stages st = stages_of(dist, f, c);
  const double bucket_width = eps / static_cast<double>(d);
  const auto buckets =
      static_cast<std::size_t>(std::floor(1.0 / bucket_width + 1e-9)) + 1;
  constexpr double kNone = -std::numeric_limits<double>::infinity();

  // g[v][k][b]: best accumulated stage gain with s_v = levels[k] and the
  // boundary decay floored into bucket b (representative b * width).
  // Stage v contributes f N q_{d+1-v} x (1 - exp(-(s_v - s_{v-1}) rate_v))
  // (c - E[r | r <= r_{d+1-v}]); the f N factor is applied at the end.
  struct Cell {
    double value = kNone;
    std::size_t parent_level = 0;
    std::size_t parent_bucket = 0;
  };
  std::vector<std::vector<std::vector<Cell>>> g(
      d + 1, std::vector<std::vector<Cell>>(levels.size(),
                                            std::vector<Cell>(buckets)));
  g[0][0][buckets - 1].value = 0.0;
  for (std::size_t v = 1; v <= d; ++v) {
    const std::size_t atom = d - v;
    const double q = dist.cdf_at(atom + 1);
    const double margin = c - dist.cond_mean_below(atom + 1);
    for (std::size_t k = 0; k <= top; ++k) {
      for (std::size_t b = 0; b < buckets; ++b) {
        const Cell& from = g[v - 1][k][b];
        if (from.value == kNone) continue;
        const double x =
            v == 1 ? 1.0 : static_cast<double>(b) * bucket_width;
        const std::size_t k_first = v == d ? top : k;
        for (std::size_t k2 = k_first; k2 <= top; ++k2) {
          const double carry =
              std::exp(-(levels[k2] - levels[k]) * st.rate[v]);
          const double value =
              from.value + q * x * (1.0 - carry) * margin;
          const double x2 = x * carry;
          const auto b2 = std::min(
              buckets - 1,
              static_cast<std::size_t>(std::floor(x2 / bucket_width + 1e-12)));
          Cell& to = g[v][k2][b2];
          if (value > to.value) to = {value, k, b};
        }
      }
    }
  }
  std::size_t best_bucket = 0;
  for (std::size_t b = 0; b < buckets; ++b) {
    if (g[d][top][b].value > g[d][top][best_bucket].value) best_bucket = b;
  }
  std::vector<double> thresholds(d);
  std::size_t k = top;
  std::size_t b = best_bucket;
  for (std::size_t v = d; v >= 1; --v) {
    thresholds[v - 1] = levels[k];
    const Cell& cell = g[v][k][b];
    k = cell.parent_level;
    b = cell.parent_bucket;
  }
  thresholds.back() = 1.0;
  return ThresholdPolicy(dist, std::move(thresholds));
}

ThresholdPolicy optimize_thresholds_grid(const RewardDistribution& dist,
                                         double f, double c, double eps) {
  require_normalized(dist, c);
  require_supply(f);
  const std::size_t d = dist.size();
  if (d > 4) {
    throw Error(ErrorCode::kTooManyThresholds,
                "exhaustive grid search supports d <= 4");
  }
  const auto levels = threshold_levels(eps);
  const std::size_t free = d - 1;
  std::vector<std::size_t> index(free, 0);
  std::vector<double> candidate(d, 1.0);
  std::vector<double> best;
  double best_value = -std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t i = 0; i < free; ++i) candidate[i] = levels[index[i]];
    const double value = ub_continuous(dist, candidate, f, c, 1.0);
    if (value > best_value) {
      best_value = value;
      best = candidate;
    }
    // Next non-decreasing index vector in lexicographic order.
    std::size_t pos = free;
    while (pos > 0 && index[pos - 1] == levels.size() - 1) --pos;
    if (pos == 0) break;
    ++index[pos - 1];
    for (std::size_t i = pos; i < free; ++i) index[i] = index[pos - 1];
  }
  return ThresholdPolicy(dist, std::move(best));
}

}  // namespace yieldopt
