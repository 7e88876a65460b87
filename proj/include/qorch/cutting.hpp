// Copyright 2026 The qorch Authors
//
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

#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "qorch/circuit.hpp"
#include "qorch/error.hpp"
#include "qorch/rng.hpp"

namespace qorch {

// Balanced two-way split of a circuit's qubits. partition[q] is 0 or 1 and the
// part sizes differ by at most one.
struct Bisection {
  std::vector<int> partition;
  int crossings = 0;
};

struct CutSolution {
  int k_max = 0;
  int achieved_cuts = 0;
  std::vector<Circuit> fragments;
  std::vector<int> partition;                   // logical qubit -> fragment id
  std::vector<std::vector<int>> fragment_qubits;  // fragment id -> original qubits, ascending
};

namespace detail {

using WeightMatrix = std::vector<std::vector<int>>;

inline WeightMatrix interaction_weights(const Circuit& c) {
  WeightMatrix w(c.width, std::vector<int>(c.width, 0));
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::TwoQubit) continue;
    ++w[g.qubits[0]][g.qubits[1]];
    ++w[g.qubits[1]][g.qubits[0]];
  }
  return w;
}

inline int crossing_count(const WeightMatrix& w, const std::vector<int>& part) {
  int total = 0;
  const int n = static_cast<int>(part.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (part[a] != part[b]) total += w[a][b];
  return total;
}

// Best-improvement pairwise-swap hill climbing. d[q] is external minus
// internal weight of q; swapping a and b changes crossings by
// -(d[a] + d[b] - 2 w[a][b]).
inline int hill_climb(const WeightMatrix& w, std::vector<int>& part) {
  const int n = static_cast<int>(part.size());
  std::vector<int> d(n);
  for (;;) {
    for (int q = 0; q < n; ++q) {
      int ext = 0;
      int in = 0;
      for (int r = 0; r < n; ++r) {
        if (r == q) continue;
        (part[r] == part[q] ? in : ext) += w[q][r];
      }
      d[q] = ext - in;
    }
    int best_gain = 0;
    int best_a = -1;
    int best_b = -1;
    for (int a = 0; a < n; ++a) {
      if (part[a] != 0) continue;
      for (int b = 0; b < n; ++b) {
        if (part[b] != 1) continue;
        const int gain = d[a] + d[b] - 2 * w[a][b];
        if (gain > best_gain) {
          best_gain = gain;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_a < 0) break;
    std::swap(part[best_a], part[best_b]);
  }
  return crossing_count(w, part);
}

}  // namespace detail

// Greedy minimum-crossing balanced bisection: an interleaved start plus
// random restarts, each refined by hill climbing. Deterministic.
inline Bisection bisect_qubits(const Circuit& c, int restarts = 10) {
  detail::require(c.width >= 2, "bisect_qubits: circuit width must be >= 2");
  const int n = c.width;
  const auto w = detail::interaction_weights(c);

  Bisection best;
  best.crossings = -1;
  Rng rng(seed_for(0, "bisection"));
  std::vector<int> order(n);
  for (int r = 0; r < std::max(1, restarts); ++r) {
    std::vector<int> part(n);
    if (r == 0) {
      for (int q = 0; q < n; ++q) part[q] = q % 2;
    } else {
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (int i = 0; i < n; ++i) part[order[i]] = i < (n + 1) / 2 ? 0 : 1;
    }
    const int crossings = detail::hill_climb(w, part);
    if (best.crossings < 0 || crossings < best.crossings) {
      best.crossings = crossings;
      best.partition = std::move(part);
    }
  }
  return best;
}

// Splits the circuit along a bisection. Two-qubit gates that cross the
// partition are deleted; every other gate lands in its fragment with qubits
// relabelled in ascending original order.
inline CutSolution apply_cut(const Circuit& c, const Bisection& bisection, int k_max) {
  detail::require(k_max >= 1, "cut_circuit: k_max must be >= 1");
  if (bisection.crossings > k_max) {
    throw CutInfeasible("cut_circuit: best bisection needs " + std::to_string(bisection.crossings) +
                        " cuts, more than k_max=" + std::to_string(k_max));
  }
  CutSolution cut;
  cut.k_max = k_max;
  cut.achieved_cuts = bisection.crossings;
  cut.partition = bisection.partition;
  cut.fragment_qubits.assign(2, {});
  std::vector<int> local(c.width);
  for (int q = 0; q < c.width; ++q) {
    auto& members = cut.fragment_qubits[bisection.partition[q]];
    local[q] = static_cast<int>(members.size());
    members.push_back(q);
  }
  cut.fragments.resize(2);
  for (int f = 0; f < 2; ++f) {
    cut.fragments[f].width = static_cast<int>(cut.fragment_qubits[f].size());
    cut.fragments[f].shots = c.shots;
  }
  for (const Gate& g : c.gates) {
    const int fa = bisection.partition[g.qubits[0]];
    if (g.kind == GateKind::TwoQubit) {
      if (fa != bisection.partition[g.qubits[1]]) continue;
      cut.fragments[fa].gates.push_back(Gate::two(local[g.qubits[0]], local[g.qubits[1]]));
    } else {
      cut.fragments[fa].gates.push_back({g.kind, {local[g.qubits[0]], -1}});
    }
  }
  return cut;
}

inline CutSolution cut_circuit(const Circuit& c, int k_max) {
  detail::require(k_max >= 1, "cut_circuit: k_max must be >= 1");
  return apply_cut(c, bisect_qubits(c), k_max);
}

}  // namespace qorch
