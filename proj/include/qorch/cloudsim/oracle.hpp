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
#include <string>
#include <vector>

#include "qorch/cloudsim/config.hpp"
#include "qorch/cloudsim/workload.hpp"
#include "qorch/estimator/fidelity.hpp"
#include "qorch/estimator/regression.hpp"
#include "qorch/rng.hpp"
#include "qorch/scheduler/job.hpp"
#include "qorch/transpiler.hpp"

namespace qorch {

// Per-QPU constants: the nominal model with each constant scaled by its own
// lognormal factor.
inline TimingModel jitter_timing(const TimingModel& nominal, std::uint64_t root_seed, const std::string& qpu_id) {
  TimingModel t = nominal;
  Rng rng = make_rng(root_seed, "timing/" + qpu_id);
  t.t_layer *= std::exp(normal(rng, 0.0, nominal.qpu_jitter));
  t.t_shot *= std::exp(normal(rng, 0.0, nominal.qpu_jitter));
  t.t_overhead *= std::exp(normal(rng, 0.0, nominal.qpu_jitter));
  return t;
}

struct GroundTruth {
  double true_time = 0;
  double true_fidelity = 0;
};

// What actually happens when a job runs: times from the QPU's own timing
// constants, fidelity from its current (not published) calibration, both with
// lognormal noise.
inline GroundTruth ground_truth_execution(const Job& job, const QpuState& qpu, const TimingModel& timing,
                                          double sigma_fid, bool parallel_fragments, Rng& rng) {
  GroundTruth g{0.0, 1.0};
  for (const Circuit& part : job.parts) {
    const TranspiledCircuit tc = transpile(part, qpu);
    const double t = timing.seconds(part.shots, transpiled_metrics(tc).depth);
    g.true_time = parallel_fragments ? std::max(g.true_time, t) : g.true_time + t;
    g.true_fidelity = std::min(g.true_fidelity, estimate_fidelity(tc, qpu.calibration));
  }
  g.true_time *= std::exp(normal(rng, 0.0, timing.exec_jitter));
  g.true_fidelity = std::clamp(g.true_fidelity * std::exp(normal(rng, 0.0, sigma_fid)), 0.0, 1.0);
  return g;
}

// Regression training data: workload-distributed circuits transpiled onto
// the templates, timed by the nominal oracle with multiplicative noise.
inline std::vector<Sample> sample_training_set(const WorkloadParams& workload,
                                               const std::vector<TemplateQpu>& templates,
                                               const TimingModel& timing, int n, double noise,
                                               std::uint64_t seed) {
  detail::require(!templates.empty(), "sample_training_set: no templates");
  std::vector<Sample> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  Rng rng(seed_for(seed, "noise"));
  for (int i = 0; i < n; ++i) {
    const TemplateQpu& t = templates[static_cast<std::size_t>(i) % templates.size()];
    const Circuit c = sample_circuit(workload, t.coupling.size(), seed_for(seed, "circuit", i));
    const CircuitMetrics m = transpiled_metrics(transpile(c, t));
    const double secs = timing.seconds(m.shots, m.depth) * std::exp(normal(rng, 0.0, noise));
    out.push_back({FeatureVector::from(m), secs});
  }
  return out;
}

}  // namespace qorch
