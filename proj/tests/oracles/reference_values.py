# Copyright 2026 The yieldopt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference values frozen into the C++ tests.

Written from the model definitions with mpmath (50 digits) and plain
enumeration; it shares no code with the library. Run with python3.
"""

import itertools

import mpmath as mp

mp.mp.dps = 50


def ub(support, masses, s, f, c):
    """Closed-form objective per unit demand, normalized distribution."""
    d = len(support)
    cum = list(itertools.accumulate(masses))
    expo = [mp.mpf(0)]
    prev = mp.mpf(0)
    for j in range(1, d + 1):
        expo.append(expo[-1] + (mp.mpf(s[j - 1]) - prev) / (f * cum[d - j]))
        prev = mp.mpf(s[j - 1])
    total = -c + f * sum(m * r for m, r in zip(masses, support))
    for u in range(1, d + 1):
        total += f * (1 - mp.e ** (-expo[d + 1 - u])) * masses[u - 1] * (c - support[u - 1])
    return total


def lb(support, masses, s, f, c, t):
    """Finite-t objective from the per-step adversary profile."""
    d = len(support)
    cum = list(itertools.accumulate(masses))
    bounds = [0] + [int(mp.nint(mp.mpf(x) * t)) for x in s]
    bounds[-1] = t
    for u in range(1, d + 1):
        bounds[u] = max(bounds[u], bounds[u - 1])
    total = -c + f * sum(m * r for m, r in zip(masses, support))
    beta = mp.mpf(1) / t
    for u in range(1, d + 1):
        v = d + 1 - u
        cond = sum(masses[i] * support[i] for i in range(v)) / cum[v - 1]
        decay = 1 - (1 / cum[v - 1]) / (t * f)
        for _ in range(bounds[u - 1], bounds[u]):
            total += beta * (c - cond)
            beta *= decay
    return total


def grid_opt(support, masses, f, c, eps_den):
    d = len(support)
    levels = [mp.mpf(k) / eps_den for k in range(eps_den + 1)]
    best = None
    for idx in itertools.combinations_with_replacement(range(eps_den + 1), d - 1):
        s = [levels[i] for i in idx] + [mp.mpf(1)]
        val = ub(support, masses, s, f, c)
        if best is None or val > best[0] + mp.mpf(10) ** -30:
            best = (val, idx)
    return best


def offline_exact(demands, eligible, rewards, c):
    """Brute force over every assignment of queries to advertisers or sale."""
    best = None
    options = [[None] + list(e) for e in eligible]
    for choice in itertools.product(*options):
        load = [0] * len(demands)
        ok = True
        value = mp.mpf(0)
        for q, a in enumerate(choice):
            if a is None:
                value += rewards[q]
            else:
                load[a] += 1
                ok = ok and load[a] <= demands[a]
        if not ok:
            continue
        value -= c * sum(n - k for n, k in zip(demands, load))
        best = value if best is None else max(best, value)
    return best


def main():
    half = mp.mpf(1) / 2
    s_star = 1 + mp.log(half)
    print("binary_threshold(2,.5,.5,1)", s_star)
    print("ub binary at s*", ub([0, half], [half, half], [s_star, 1], 2, 1))
    print("ub binary at 0", ub([0, half], [half, half], [0, 1], 2, 1))
    print("lb binary at s*, t=1e5", lb([0, half], [half, half], [s_star, 1], 2, 1, 100000))
    three = ([0, mp.mpf("0.3"), mp.mpf("0.8")], [mp.mpf("0.3"), mp.mpf("0.4"), mp.mpf("0.3")])
    s3 = [mp.mpf("0.2"), mp.mpf("0.6"), 1]
    print("ub three-point s=(.2,.6,1) f=2", ub(*three, s3, 2, 1))
    print("lb three-point s=(.2,.6,1) f=2 t=1000", lb(*three, s3, 2, 1, 1000))
    val, idx = grid_opt(*three, 2, 1, 50)
    print("grid three-point f=2 eps=1/50", val, [i / 50 for i in idx])
    val, idx = grid_opt(*three, mp.mpf("1.5"), 1, 40)
    print("grid three-point f=1.5 eps=1/40", val, [i / 40 for i in idx])
    print("point mass 0 f=1 s=(1)", ub([0], [1], [1], 1, 1))
    print("offline two queries", offline_exact([1], [[0], [0]], [0, half], 1))
    print("offline mixed", offline_exact(
        [2, 1], [[0, 1], [1], [1], [0], [0, 1], [0]],
        [mp.mpf("0.9"), mp.mpf("0.1"), 0, mp.mpf("0.4"), mp.mpf("0.2"), mp.mpf("0.7")], 1))


if __name__ == "__main__":
    main()
