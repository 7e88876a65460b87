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
#include <span>
#include <string>

#include "qorch/cutting.hpp"
#include "qorch/error.hpp"
#include "qorch/qpu.hpp"
#include "qorch/transpiler.hpp"

namespace qorch {

// Product of per-operation success probabilities (1 - error). Single-qubit
// ops read the qubit's gate error, two-qubit ops the edge error, measures the
// readout error.
inline double estimate_fidelity(const TranspiledCircuit& tc, const CalibrationData& cal) {
  const CouplingMap& map = tc.coupling;
  double f = 1.0;
  for (const PhysicalOp& op : tc.ops) {
    switch (op.kind) {
      case GateKind::OneQubit:
        f *= 1.0 - cal.single_qubit_error.at(op.phys[0]);
        break;
      case GateKind::Measure:
        f *= 1.0 - cal.readout_error.at(op.phys[0]);
        break;
      case GateKind::TwoQubit: {
        const int e = map.edge_index(op.phys[0], op.phys[1]);
        if (e < 0)
          throw InvariantViolation("estimate_fidelity: two-qubit op on non-edge (" +
                                   std::to_string(op.phys[0]) + "," + std::to_string(op.phys[1]) + ")");
        f *= 1.0 - cal.two_qubit_error.at(e);
        break;
      }
    }
  }
  return std::clamp(f, 0.0, 1.0);
}

// A cut solution is only as good as its worst fragment.
inline double min_fragment_fidelity(std::span<const double> per_fragment) {
  detail::require(!per_fragment.empty(), "min_fragment_fidelity: empty fidelity list");
  for (double f : per_fragment)
    detail::require(f >= 0.0 && f <= 1.0, "min_fragment_fidelity: fidelity outside [0, 1]");
  return *std::min_element(per_fragment.begin(), per_fragment.end());
}

inline double min_fragment_fidelity(const CutSolution& cut, std::span<const double> per_fragment) {
  detail::require(per_fragment.size() == cut.fragments.size(),
                  "min_fragment_fidelity: one fidelity per fragment expected");
  return min_fragment_fidelity(per_fragment);
}

}  // namespace qorch
