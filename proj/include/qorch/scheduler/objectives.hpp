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

#include <span>
#include <string>
#include <vector>

#include "qorch/error.hpp"
#include "qorch/scheduler/job.hpp"

namespace qorch {

// x[i] is the QPU index job i runs on.
using Assignment = std::vector<int>;

struct ObjectivePoint {
  double f1 = 0;  // mean JCT, seconds
  double f2 = 0;  // mean error, 1 - mean fidelity

  friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

// Minimization in both coordinates: no worse in each, strictly better in one.
inline bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

inline void check_feasible(const Assignment& x, const std::vector<Job>& jobs) {
  if (x.size() != jobs.size())
    throw ConstraintError("assignment length " + std::to_string(x.size()) + " != job count " +
                          std::to_string(jobs.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!jobs[i].is_feasible(x[i]))
      throw ConstraintError("job " + std::to_string(jobs[i].id) + " assigned to infeasible QPU index " +
                            std::to_string(x[i]));
  }
}

// Jobs sharing a QPU run in batch order, so job i completes after the queue's
// existing wait, every earlier same-QPU job and itself. f1 is the mean of
// those completion times; f2 the mean estimated error.
inline ObjectivePoint evaluate_unchecked(const Assignment& x, const std::vector<Job>& jobs,
                                         std::span<const double> queue_wait, std::vector<double>& load) {
  load.assign(queue_wait.begin(), queue_wait.end());
  double jct = 0;
  double err = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const QpuEstimate& e = *jobs[i].per_qpu[x[i]];
    load[x[i]] += e.t;
    jct += load[x[i]];
    err += 1.0 - e.f;
  }
  const double n = static_cast<double>(x.size());
  return {jct / n, err / n};
}

inline ObjectivePoint evaluate_objectives(const Assignment& x, const std::vector<Job>& jobs,
                                          std::span<const double> queue_wait) {
  detail::require(!jobs.empty(), "evaluate_objectives: no jobs");
  check_feasible(x, jobs);
  for (const Job& j : jobs)
    detail::require(j.per_qpu.size() == queue_wait.size(), "evaluate_objectives: queue_wait size mismatch");
  std::vector<double> load;
  return evaluate_unchecked(x, jobs, queue_wait, load);
}

}  // namespace qorch
