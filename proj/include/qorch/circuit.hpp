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
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qorch/error.hpp"
#include "qorch/rng.hpp"

namespace qorch {

enum class GateKind : std::uint8_t { OneQubit, TwoQubit, Measure };

inline const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::OneQubit: return "1q";
    case GateKind::TwoQubit: return "2q";
    case GateKind::Measure: return "measure";
  }
  return "?";
}

inline int arity(GateKind k) { return k == GateKind::TwoQubit ? 2 : 1; }

// An abstract gate. Only the kind and the qubits it touches matter; there is
// no unitary. For single-qubit kinds qubits[1] is -1.
struct Gate {
  GateKind kind = GateKind::OneQubit;
  std::array<int, 2> qubits{0, -1};

  static Gate one(int q) { return {GateKind::OneQubit, {q, -1}}; }
  static Gate two(int a, int b) { return {GateKind::TwoQubit, {a, b}}; }
  static Gate measure(int q) { return {GateKind::Measure, {q, -1}}; }

  int arity() const { return qorch::arity(kind); }
  friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
  int width = 1;
  std::vector<Gate> gates;
  std::int64_t shots = 1;

  // Throws ParameterError if any invariant is broken.
  void validate() const {
    detail::require(width >= 1, "circuit width must be >= 1");
    detail::require(shots >= 1, "circuit shots must be >= 1");
    for (const Gate& g : gates) {
      const int n = g.arity();
      for (int i = 0; i < n; ++i) {
        detail::require(g.qubits[i] >= 0 && g.qubits[i] < width,
                        "gate qubit index out of range for width " + std::to_string(width));
      }
      if (n == 2) detail::require(g.qubits[0] != g.qubits[1], "two-qubit gate on identical qubits");
    }
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

struct CircuitMetrics {
  int width = 0;
  int depth = 0;
  int two_qubit_count = 0;
  int total_gates = 0;
  std::int64_t shots = 0;

  friend bool operator==(const CircuitMetrics&, const CircuitMetrics&) = default;
};

// Layer depth over an arbitrary qubit-index space: each gate sits one layer
// after the latest gate on any of its qubits.
template <typename Ops, typename QubitsOf>
int layered_depth(const Ops& ops, int qubit_count, QubitsOf&& qubits_of) {
  std::vector<int> level(static_cast<std::size_t>(qubit_count), 0);
  int depth = 0;
  for (const auto& op : ops) {
    const auto [a, b] = qubits_of(op);
    int layer = level[a];
    if (b >= 0) layer = std::max(layer, level[b]);
    ++layer;
    level[a] = layer;
    if (b >= 0) level[b] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

inline CircuitMetrics circuit_metrics(const Circuit& c) {
  CircuitMetrics m;
  m.width = c.width;
  m.shots = c.shots;
  m.total_gates = static_cast<int>(c.gates.size());
  m.two_qubit_count = static_cast<int>(std::count_if(
      c.gates.begin(), c.gates.end(), [](const Gate& g) { return g.kind == GateKind::TwoQubit; }));
  m.depth = layered_depth(c.gates, c.width, [](const Gate& g) {
    return std::pair{g.qubits[0], g.kind == GateKind::TwoQubit ? g.qubits[1] : -1};
  });
  return m;
}

// How the generator picks partners for two-qubit gates.
enum class Interaction : std::uint8_t {
  Random,  // any distinct pair
  Linear,  // nearest neighbours (q, q+1)
};

struct GeneratorOptions {
  Interaction interaction = Interaction::Random;
};

// Random circuit of the given width. Gates are appended one at a time until
// the layered depth of the body reaches target_depth - 1; the terminal measure
// on every qubit then adds the last layer. Each body gate is two-qubit with
// probability two_qubit_fraction (never when width == 1).
inline Circuit generate_random_circuit(std::uint64_t seed, int width, int target_depth,
                                       double two_qubit_fraction, std::int64_t shots,
                                       GeneratorOptions opts = {}) {
  detail::require(width >= 1, "generate_random_circuit: width must be >= 1");
  detail::require(target_depth >= 1, "generate_random_circuit: target_depth must be >= 1");
  detail::require(two_qubit_fraction >= 0.0 && two_qubit_fraction <= 1.0,
                  "generate_random_circuit: two_qubit_fraction must be in [0, 1]");
  detail::require(shots >= 1, "generate_random_circuit: shots must be >= 1");

  Rng rng(seed);
  Circuit c;
  c.width = width;
  c.shots = shots;

  const int body_depth = std::max(1, target_depth - 1);
  std::vector<int> level(static_cast<std::size_t>(width), 0);
  int depth = 0;
  std::uniform_int_distribution<int> pick(0, width - 1);
  while (depth < body_depth) {
    const bool two = width >= 2 && uniform01(rng) < two_qubit_fraction;
    Gate g;
    if (two) {
      int a = 0;
      int b = 0;
      if (opts.interaction == Interaction::Linear) {
        a = std::uniform_int_distribution<int>(0, width - 2)(rng);
        b = a + 1;
      } else {
        a = pick(rng);
        b = std::uniform_int_distribution<int>(0, width - 2)(rng);
        if (b >= a) ++b;
      }
      g = Gate::two(a, b);
      const int layer = std::max(level[a], level[b]) + 1;
      level[a] = level[b] = layer;
      depth = std::max(depth, layer);
    } else {
      const int q = pick(rng);
      g = Gate::one(q);
      depth = std::max(depth, ++level[q]);
    }
    c.gates.push_back(g);
  }
  for (int q = 0; q < width; ++q) c.gates.push_back(Gate::measure(q));
  return c;
}

}  // namespace qorch
