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

#include <string>
#include <vector>

#include "qorch/error.hpp"
#include "qorch/estimator/plans.hpp"
#include "qorch/scheduler/job.hpp"
#include "qorch/scheduler/objectives.hpp"

namespace qorch {

// First-come-first-serve: every job goes to its highest-fidelity feasible QPU,
// regardless of queue length. Ties go to the lowest QPU index.
inline Assignment fcfs_schedule(const std::vector<Job>& jobs) {
  Assignment x;
  x.reserve(jobs.size());
  for (const Job& j : jobs) {
    detail::require<ConstraintError>(!j.feasible.empty(), "fcfs_schedule: job without feasible QPU");
    int best = j.feasible.front();
    for (int q : j.feasible)
      if (j.at(q).f > j.at(best).f) best = q;
    x.push_back(best);
  }
  return x;
}

struct ClassicalNode {
  std::string id;
  AcceleratorKind kind = AcceleratorKind::CPU;
  int count = 1;        // accelerators on the node
  double speed = 1e10;  // FLOP/s per accelerator
  double utilization = 0;
};

struct ClassicalTask {
  AcceleratorKind kind = AcceleratorKind::CPU;
  int count = 1;
  double min_speed = 0;  // required FLOP/s
};

inline bool passes_filter(const ClassicalTask& task, const ClassicalNode& node) {
  return node.kind == task.kind && node.count >= task.count && node.speed >= task.min_speed;
}

// Two-stage placement: drop nodes that cannot host the task, then pick the
// least utilized survivor (ties by id).
inline std::size_t filter_score_classical(const ClassicalTask& task, const std::vector<ClassicalNode>& nodes) {
  detail::require(!nodes.empty(), "filter_score_classical: node list is empty");
  std::size_t best = nodes.size();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!passes_filter(task, nodes[i])) continue;
    if (best == nodes.size() || nodes[i].utilization < nodes[best].utilization ||
        (nodes[i].utilization == nodes[best].utilization && nodes[i].id < nodes[best].id))
      best = i;
  }
  if (best == nodes.size())
    throw NoFeasibleNode(std::string("filter_score_classical: no node offers ") + std::to_string(task.count) +
                         " x " + to_string(task.kind));
  return best;
}

}  // namespace qorch
