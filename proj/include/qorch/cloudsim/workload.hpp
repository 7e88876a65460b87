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
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qorch/circuit.hpp"
#include "qorch/cloudsim/config.hpp"
#include "qorch/estimator/plans.hpp"
#include "qorch/rng.hpp"
#include "qorch/scheduler/job.hpp"

namespace qorch {

struct CircuitShape {
  int width = 0;
  int depth = 0;
  std::int64_t shots = 0;
};

// Width and depth from clamped normals, shots log-uniform.
inline CircuitShape sample_shape(const WorkloadParams& w, int width_cap, Rng& rng) {
  const int cap = w.width_max > 0 ? std::min(w.width_max, width_cap) : width_cap;
  CircuitShape s;
  s.width = std::clamp(static_cast<int>(std::lround(normal(rng, w.width_mean, w.width_std))), w.width_min,
                       std::max(w.width_min, cap));
  s.depth = std::max(w.depth_min, static_cast<int>(std::lround(normal(rng, w.depth_mean, w.depth_std))));
  const double lo = std::log(static_cast<double>(w.shots_min));
  const double hi = std::log(static_cast<double>(w.shots_max));
  s.shots = std::clamp(static_cast<std::int64_t>(std::llround(std::exp(uniform(rng, lo, hi)))), w.shots_min,
                       w.shots_max);
  return s;
}

inline Circuit sample_circuit(const WorkloadParams& w, int width_cap, std::uint64_t seed) {
  Rng rng(seed_for(seed, "shape"));
  const CircuitShape s = sample_shape(w, width_cap, rng);
  return generate_random_circuit(seed_for(seed, "gates"), s.width, s.depth, w.two_qubit_fraction, s.shots,
                                 {w.interaction});
}

// The plan a hybrid application settles on: the highest-fidelity plan that
// actually cuts, if the estimator offers one.
inline std::optional<ResourcePlan> choose_cut_plan(const std::vector<ResourcePlan>& plans) {
  std::optional<ResourcePlan> best;
  for (const ResourcePlan& p : plans)
    if (p.k > 0 && (!best || p.est_fidelity > best->est_fidelity)) best = p;
  return best;
}

struct WorkloadContext {
  WorkloadParams params;
  int width_cap = 27;
  std::vector<TemplateQpu> templates;
  EstimatorConfig estimator;
  const EstimatorContext* ctx = nullptr;  // required when cut_fraction > 0
};

// Job `index` of a workload stream. Hybrid applications ask the estimator for
// resource plans and adopt the cut budget of the best cutting plan.
inline RawJob make_job(const WorkloadContext& wc, std::uint64_t root_seed, JobId index, double arrival) {
  RawJob job;
  job.id = index;
  job.arrival_time = arrival;
  const std::uint64_t seed = seed_for(root_seed, "workload", static_cast<std::uint64_t>(index));
  job.circuit = sample_circuit(wc.params, wc.width_cap, seed);
  Rng rng(seed_for(seed, "hybrid"));
  const bool hybrid = uniform01(rng) < wc.params.cut_fraction;
  if (hybrid && wc.ctx && job.circuit.width >= 2) {
    try {
      const auto plans = generate_resource_plans(job.circuit, wc.templates, wc.estimator.accelerators,
                                                 wc.estimator.k_set, wc.estimator.plan_count, *wc.ctx);
      if (auto plan = choose_cut_plan(plans)) {
        job.cut_k = plan->k;
        for (const auto& a : wc.estimator.accelerators)
          if (plan->accelerator && a.id == *plan->accelerator) job.knit_kind = a.kind;
      }
    } catch (const NoFeasiblePlan&) {
    }
  }
  return job;
}

}  // namespace qorch
