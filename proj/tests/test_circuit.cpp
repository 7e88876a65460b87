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

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "qorch/circuit.hpp"
#include "qorch/cutting.hpp"

using namespace qorch;

namespace {

int count_kind(const Circuit& c, GateKind k) {
  return static_cast<int>(std::count_if(c.gates.begin(), c.gates.end(), [&](const Gate& g) { return g.kind == k; }));
}

}  // namespace

TEST(Generator, SingleQubitHasNoTwoQubitGates) {
  const Circuit c = generate_random_circuit(1, 1, 1, 0.0, 100);
  EXPECT_EQ(c.width, 1);
  EXPECT_EQ(c.shots, 100);
  EXPECT_EQ(count_kind(c, GateKind::TwoQubit), 0);
  EXPECT_EQ(count_kind(c, GateKind::Measure), 1);
  EXPECT_GE(count_kind(c, GateKind::OneQubit), 1);
  EXPECT_NO_THROW(c.validate());
}

TEST(Generator, TwoQubitFractionOfOneCircuit) {
  const Circuit c = generate_random_circuit(7, 12, 30, 0.3, 1024);
  const double body = static_cast<double>(c.gates.size()) - count_kind(c, GateKind::Measure);
  const double frac = count_kind(c, GateKind::TwoQubit) / body;
  EXPECT_GE(frac, 0.2);
  EXPECT_LE(frac, 0.4);
}

TEST(Generator, SameSeedSameGates) {
  for (auto mode : {Interaction::Random, Interaction::Linear}) {
    const Circuit a = generate_random_circuit(99, 9, 20, 0.4, 500, {mode});
    const Circuit b = generate_random_circuit(99, 9, 20, 0.4, 500, {mode});
    EXPECT_EQ(a, b);
    EXPECT_NE(a, generate_random_circuit(100, 9, 20, 0.4, 500, {mode}));
  }
}

TEST(Generator, DepthWithinTwentyPercentAndMeasuresLast) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int width = 1 + static_cast<int>(seed % 20);
    const int target = 2 + static_cast<int>(seed % 40);
    const Circuit c = generate_random_circuit(seed, width, target, 0.3, 10);
    const int depth = circuit_metrics(c).depth;
    EXPECT_LE(std::abs(depth - target), 0.2 * target) << "seed " << seed;
    std::set<int> measured;
    for (std::size_t i = c.gates.size() - width; i < c.gates.size(); ++i) {
      EXPECT_EQ(c.gates[i].kind, GateKind::Measure);
      measured.insert(c.gates[i].qubits[0]);
    }
    EXPECT_EQ(static_cast<int>(measured.size()), width);
  }
}

TEST(Generator, EmpiricalFractionOverThousandCircuits) {
  for (double frac : {0.1, 0.3, 0.6}) {
    double two = 0, body = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const Circuit c = generate_random_circuit(seed, 8, 12, frac, 10);
      two += count_kind(c, GateKind::TwoQubit);
      body += static_cast<double>(c.gates.size()) - count_kind(c, GateKind::Measure);
    }
    EXPECT_NEAR(two / body, frac, 0.05);
  }
}

TEST(Generator, RejectsBadParameters) {
  EXPECT_THROW(generate_random_circuit(1, 0, 5, 0.3, 10), ParameterError);
  EXPECT_THROW(generate_random_circuit(1, 3, 0, 0.3, 10), ParameterError);
  EXPECT_THROW(generate_random_circuit(1, 3, 5, 1.5, 10), ParameterError);
  EXPECT_THROW(generate_random_circuit(1, 3, 5, 0.3, 0), ParameterError);
}

TEST(Circuit, ValidateCatchesBadGates) {
  Circuit c{2, {Gate::two(0, 2)}, 1};
  EXPECT_THROW(c.validate(), ParameterError);
  c.gates = {Gate::two(1, 1)};
  EXPECT_THROW(c.validate(), ParameterError);
  c.gates = {Gate::two(0, 1)};
  c.shots = 0;
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST(Metrics, EmptyCircuit) {
  const Circuit c{3, {}, 1};
  const auto m = circuit_metrics(c);
  EXPECT_EQ(m.depth, 0);
  EXPECT_EQ(m.two_qubit_count, 0);
  EXPECT_EQ(m.width, 3);
}

TEST(Metrics, ChainOnOneQubit) {
  const Circuit c{2, {Gate::one(0), Gate::one(0), Gate::one(0)}, 1};
  EXPECT_EQ(circuit_metrics(c).depth, 3);
}

TEST(Metrics, MatchesDagOracleAndIsPure) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Circuit c = generate_random_circuit(seed, 2 + seed % 11, 3 + seed % 25, 0.45, 10,
                                              {seed % 2 ? Interaction::Linear : Interaction::Random});
    const auto m = circuit_metrics(c);
    EXPECT_EQ(m.depth, oracle::dag_depth(c)) << "seed " << seed;
    EXPECT_EQ(m, circuit_metrics(c));
    EXPECT_LE(m.depth, m.total_gates);
    EXPECT_LE(m.two_qubit_count, m.total_gates);
  }
}

TEST(Cutting, DisconnectedHalvesNeedNoCut) {
  const Circuit c{4, {Gate::two(0, 1), Gate::two(2, 3), Gate::two(0, 1), Gate::measure(0)}, 10};
  const CutSolution s = cut_circuit(c, 3);
  EXPECT_EQ(s.achieved_cuts, 0);
  ASSERT_EQ(s.fragments.size(), 2u);
  EXPECT_EQ(s.fragments[0].width, 2);
  EXPECT_EQ(s.fragments[1].width, 2);
}

TEST(Cutting, ForcedSingleCrossing) {
  const Circuit c{4, {Gate::two(0, 1), Gate::two(0, 1), Gate::two(2, 3), Gate::two(2, 3), Gate::two(1, 2)}, 10};
  EXPECT_EQ(cut_circuit(c, 1).achieved_cuts, 1);
}

TEST(Cutting, InfeasibleBudgetThrows) {
  const Circuit c{4, {Gate::two(0, 1), Gate::two(0, 2), Gate::two(0, 3), Gate::two(1, 2), Gate::two(1, 3),
                      Gate::two(2, 3)},
                  1};
  EXPECT_THROW(cut_circuit(c, 1), CutInfeasible);
  EXPECT_THROW(cut_circuit(c, 0), ParameterError);
}

TEST(Cutting, EightQubitsMatchExhaustiveMinimum) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Circuit c = generate_random_circuit(seed, 8, 10, 0.4, 10);
    const int best = oracle::min_balanced_crossings(c);
    try {
      EXPECT_EQ(cut_circuit(c, 7).achieved_cuts, best) << "seed " << seed;
    } catch (const CutInfeasible&) {
      EXPECT_GT(best, 7) << "seed " << seed;
    }
  }
}

TEST(Cutting, WithinOneAndAHalfOfOptimumUpToTenQubits) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int width = 2 + static_cast<int>(seed % 9);
    const Circuit c = generate_random_circuit(seed, width, 8, 0.5, 10);
    const int best = oracle::min_balanced_crossings(c);
    const Bisection b = bisect_qubits(c);
    EXPECT_LE(b.crossings, 1.5 * best) << "seed " << seed;
    EXPECT_GE(b.crossings, best);
  }
}

TEST(Cutting, FragmentsConserveGatesAndQubits) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Circuit c = generate_random_circuit(seed, 4 + seed % 12, 10, 0.3, 77, {Interaction::Linear});
    CutSolution s;
    try {
      s = cut_circuit(c, 1000);
    } catch (const CutInfeasible&) {
      FAIL();
    }
    int two = 0;
    std::size_t gates = 0;
    std::set<int> all;
    for (std::size_t f = 0; f < s.fragments.size(); ++f) {
      const auto& frag = s.fragments[f];
      EXPECT_NO_THROW(frag.validate());
      EXPECT_LE(frag.width, c.width);
      EXPECT_EQ(frag.shots, c.shots);
      two += circuit_metrics(frag).two_qubit_count;
      gates += frag.gates.size();
      for (int q : s.fragment_qubits[f]) {
        EXPECT_TRUE(all.insert(q).second) << "fragments overlap";
        EXPECT_EQ(s.partition[q], static_cast<int>(f));
      }
    }
    EXPECT_EQ(static_cast<int>(all.size()), c.width);
    EXPECT_EQ(two + s.achieved_cuts, circuit_metrics(c).two_qubit_count);
    EXPECT_EQ(gates + s.achieved_cuts, c.gates.size());
    EXPECT_LE(std::abs(s.fragments[0].width - s.fragments[1].width), 1);
  }
}
