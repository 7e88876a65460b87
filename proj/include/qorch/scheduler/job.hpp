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
#include <optional>
#include <string>
#include <vector>

#include "qorch/circuit.hpp"
#include "qorch/cutting.hpp"
#include "qorch/estimator/plans.hpp"
#include "qorch/qpu.hpp"

namespace qorch {

// A job as submitted: a circuit plus the cut budget its resource plan chose
// (0 runs uncut).
struct RawJob {
  JobId id = 0;
  Circuit circuit;
  double arrival_time = 0;
  int cut_k = 0;
  AcceleratorKind knit_kind = AcceleratorKind::GPU;  // where knitting runs when the job is cut
};

struct QpuEstimate {
  double t = 0;  // estimated execution seconds
  double f = 0;  // estimated fidelity
};

// A pre-processed job. Indices refer to positions in the QPU list the job was
// pre-processed against.
struct Job {
  JobId id = 0;
  double arrival_time = 0;
  int q = 0;                       // widest circuit the job runs
  std::vector<Circuit> parts;      // the circuit, or the fragments of its cut
  int achieved_cuts = 0;
  std::vector<std::optional<QpuEstimate>> per_qpu;
  std::vector<int> feasible;       // ascending QPU indices with q <= size

  const QpuEstimate& at(int qpu) const { return per_qpu.at(qpu).value(); }
  bool is_feasible(int qpu) const {
    return std::binary_search(feasible.begin(), feasible.end(), qpu);
  }
};

struct Rejection {
  JobId id = 0;
  std::string reason;
};

struct PreprocessResult {
  std::vector<Job> jobs;
  std::vector<Rejection> rejected;
};

// Splits a raw job into the circuits it will run. A cut whose best bisection
// exceeds the budget falls back to the uncut circuit.
inline std::vector<Circuit> job_parts(const RawJob& raw, int* achieved_cuts = nullptr) {
  if (achieved_cuts) *achieved_cuts = 0;
  if (raw.cut_k > 0 && raw.circuit.width >= 2) {
    try {
      CutSolution cut = cut_circuit(raw.circuit, raw.cut_k);
      if (achieved_cuts) *achieved_cuts = cut.achieved_cuts;
      return std::move(cut.fragments);
    } catch (const CutInfeasible&) {
    }
  }
  return {raw.circuit};
}

// Drops jobs no QPU can hold and attaches (t, f) estimates for every feasible
// QPU, computed against the calibration the scheduler currently sees.
inline PreprocessResult preprocess(const std::vector<RawJob>& batch, const std::vector<QpuState>& qpus,
                                   const EstimatorContext& ctx) {
  detail::require(!qpus.empty(), "preprocess: QPU list is empty");
  PreprocessResult out;
  for (const RawJob& raw : batch) {
    Job job;
    job.id = raw.id;
    job.arrival_time = raw.arrival_time;
    job.parts = job_parts(raw, &job.achieved_cuts);
    for (const Circuit& c : job.parts) job.q = std::max(job.q, c.width);
    job.per_qpu.assign(qpus.size(), std::nullopt);
    for (std::size_t x = 0; x < qpus.size(); ++x) {
      if (job.q > qpus[x].coupling.size()) continue;
      job.feasible.push_back(static_cast<int>(x));
      const auto est = estimate_quantum(job.parts, qpus[x].coupling, qpus[x].calibration, ctx, qpus[x].id);
      job.per_qpu[x] = QpuEstimate{est.seconds, est.fidelity};
    }
    if (job.feasible.empty()) {
      out.rejected.push_back({raw.id, "CapacityExceeded: job needs " + std::to_string(job.q) +
                                          " qubits, no QPU is large enough"});
      continue;
    }
    out.jobs.push_back(std::move(job));
  }
  return out;
}

}  // namespace qorch
