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
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qorch/circuit.hpp"
#include "qorch/error.hpp"
#include "qorch/qpu.hpp"

namespace qorch {

struct PhysicalOp {
  GateKind kind = GateKind::OneQubit;
  std::array<int, 2> phys{0, -1};
  bool routing = false;  // one of the three two-qubit ops making up a SWAP

  friend bool operator==(const PhysicalOp&, const PhysicalOp&) = default;
};

struct TranspiledCircuit {
  std::string target;
  CouplingMap coupling;
  std::vector<PhysicalOp> ops;
  std::vector<int> layout;        // logical -> physical, before routing
  std::vector<int> final_layout;  // logical -> physical, after routing
  int swap_count = 0;
  int logical_width = 0;
  std::int64_t shots = 1;
};

struct TranspileOptions {
  std::optional<std::vector<int>> initial_layout;
};

// Physical-circuit features: depth over physical qubits and two-qubit count
// including the SWAP decomposition. Width stays the logical width.
inline CircuitMetrics transpiled_metrics(const TranspiledCircuit& tc) {
  CircuitMetrics m;
  m.width = tc.logical_width;
  m.shots = tc.shots;
  m.total_gates = static_cast<int>(tc.ops.size());
  m.two_qubit_count = static_cast<int>(std::count_if(
      tc.ops.begin(), tc.ops.end(), [](const PhysicalOp& op) { return op.kind == GateKind::TwoQubit; }));
  m.depth = layered_depth(tc.ops, tc.coupling.size(), [](const PhysicalOp& op) {
    return std::pair{op.phys[0], op.kind == GateKind::TwoQubit ? op.phys[1] : -1};
  });
  return m;
}

namespace detail {

// Logical qubits in order of activity (two-qubit gates first, then all
// gates). The first goes to the highest-degree physical qubit; each later one
// goes to the free physical qubit closest to its already placed partners.
inline std::vector<int> greedy_layout(const Circuit& c, const CouplingMap& map) {
  const int n = c.width;
  std::vector<int> two_q(n, 0);
  std::vector<int> total(n, 0);
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (const Gate& g : c.gates) {
    ++total[g.qubits[0]];
    if (g.kind == GateKind::TwoQubit) {
      ++total[g.qubits[1]];
      ++two_q[g.qubits[0]];
      ++two_q[g.qubits[1]];
      ++w[g.qubits[0]][g.qubits[1]];
      ++w[g.qubits[1]][g.qubits[0]];
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (two_q[a] != two_q[b]) return two_q[a] > two_q[b];
    return total[a] > total[b];
  });

  std::vector<int> layout(n, -1);
  std::vector<char> used(map.size(), 0);
  std::vector<int> placed;
  for (int l : order) {
    long best_cost = -1;
    int best_p = -1;
    for (int p = 0; p < map.size(); ++p) {
      if (used[p]) continue;
      long cost = 0;
      bool linked = false;
      for (int other : placed) {
        if (w[l][other] == 0) continue;
        linked = true;
        cost += static_cast<long>(w[l][other]) * map.distance(p, layout[other]);
      }
      if (!linked && !placed.empty()) {
        int near = CouplingMap::kUnreachable;
        for (int other : placed) near = std::min(near, map.distance(p, layout[other]));
        cost = near;
      }
      const bool better = best_p < 0 || cost < best_cost ||
                          (cost == best_cost && map.degree(p) > map.degree(best_p));
      if (better) {
        best_cost = cost;
        best_p = p;
      }
    }
    layout[l] = best_p;
    used[best_p] = 1;
    placed.push_back(l);
  }
  return layout;
}

}  // namespace detail

// Layout plus shortest-path SWAP routing. A two-qubit gate between
// non-adjacent physical qubits first moves its first operand along the
// shortest path until it neighbours the second; each SWAP is three two-qubit
// ops on that edge.
inline TranspiledCircuit transpile(const Circuit& c, const CouplingMap& map,
                                   std::string target = {}, const TranspileOptions& opts = {}) {
  if (c.width > map.size())
    throw CapacityExceeded("transpile: circuit of width " + std::to_string(c.width) +
                           " does not fit a QPU of size " + std::to_string(map.size()));

  TranspiledCircuit tc;
  tc.target = std::move(target);
  tc.coupling = map;
  tc.logical_width = c.width;
  tc.shots = c.shots;
  if (opts.initial_layout) {
    const auto& lay = *opts.initial_layout;
    detail::require(static_cast<int>(lay.size()) == c.width, "transpile: layout size mismatch");
    std::vector<char> seen(map.size(), 0);
    for (int p : lay) {
      detail::require(p >= 0 && p < map.size() && !seen[p], "transpile: layout must be injective");
      seen[p] = 1;
    }
    tc.layout = lay;
  } else {
    tc.layout = detail::greedy_layout(c, map);
  }

  std::vector<int> cur = tc.layout;
  std::vector<int> inv(map.size(), -1);
  for (int l = 0; l < c.width; ++l) inv[cur[l]] = l;

  tc.ops.reserve(c.gates.size() * 2);
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::TwoQubit) {
      tc.ops.push_back({g.kind, {cur[g.qubits[0]], -1}, false});
      continue;
    }
    const int pb = cur[g.qubits[1]];
    if (!map.has_edge(cur[g.qubits[0]], pb)) {
      const auto path = coupling_shortest_path(map, cur[g.qubits[0]], pb);
      for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        const int x = path[i];
        const int y = path[i + 1];
        for (int k = 0; k < 3; ++k) tc.ops.push_back({GateKind::TwoQubit, {x, y}, true});
        std::swap(inv[x], inv[y]);
        if (inv[x] >= 0) cur[inv[x]] = x;
        if (inv[y] >= 0) cur[inv[y]] = y;
        ++tc.swap_count;
      }
    }
    tc.ops.push_back({GateKind::TwoQubit, {cur[g.qubits[0]], pb}, false});
  }
  tc.final_layout = cur;
  return tc;
}

inline TranspiledCircuit transpile(const Circuit& c, const TemplateQpu& t) {
  return transpile(c, t.coupling, t.model);
}

inline TranspiledCircuit transpile(const Circuit& c, const QpuState& q) {
  return transpile(c, q.coupling, q.id);
}

}  // namespace qorch
