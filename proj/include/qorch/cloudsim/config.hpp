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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qorch/circuit.hpp"
#include "qorch/error.hpp"
#include "qorch/estimator/plans.hpp"
#include "qorch/qpu.hpp"
#include "qorch/scheduler/baseline.hpp"
#include "qorch/scheduler/mcdm.hpp"
#include "qorch/scheduler/nsga2.hpp"

namespace qorch {

// Ground-truth execution time of one circuit on a QPU:
//   shots * (physical_depth * t_layer + t_shot) + t_overhead
struct TimingModel {
  double t_layer = 300e-9;  // seconds per physical layer
  double t_shot = 5.5e-3;   // fixed per-shot cost: readout, reset, repetition delay
  double t_overhead = 2.0;  // per-circuit submission overhead
  double qpu_jitter = 0.01;   // per-QPU lognormal sigma applied to the constants
  double exec_jitter = 0.01;  // per-execution lognormal sigma on the total

  double seconds(std::int64_t shots, int physical_depth) const {
    return static_cast<double>(shots) * (physical_depth * t_layer + t_shot) + t_overhead;
  }
};

struct WorkloadParams {
  double width_mean = 10;
  double width_std = 4;
  int width_min = 2;
  int width_max = 0;  // 0: largest QPU in the cluster
  double depth_mean = 24;
  double depth_std = 6;
  int depth_min = 2;
  double two_qubit_fraction = 0.3;
  std::int64_t shots_min = 100;
  std::int64_t shots_max = 10000;
  double cut_fraction = 0.5;  // share of applications that use cutting and knitting
  Interaction interaction = Interaction::Linear;
};

enum class Policy { Pareto, FCFS };

inline const char* to_string(Policy p) { return p == Policy::Pareto ? "pareto" : "fcfs"; }

struct SchedulerConfig {
  Policy policy = Policy::Pareto;
  Preference preference = Preference::balanced();
  int trigger_queue_limit = 100;
  double trigger_interval = 120;
  NsgaParams nsga;
};

struct EstimatorConfig {
  int degree = 2;
  std::vector<int> k_set{3, 5, 7};
  int plan_count = 3;
  double overhead_base = 6.0;
  double knit_constant = kDefaultKnitConstant;
  bool parallel_fragments = false;
  std::vector<Accelerator> accelerators{{"cpu", AcceleratorKind::CPU, 1e10}, {"gpu", AcceleratorKind::GPU, 1e12}};
  int training_samples = 7000;
  double training_noise = 0.01;
  int kfolds = 5;
  std::string model_path;  // load a trained model instead of sampling the oracle
};

struct ArrivalBucket {
  int hour = 0;        // hour of day the rate starts applying
  double rate = 1500;  // jobs per hour
};

struct SimulationConfig {
  double duration = 3600;
  std::vector<ArrivalBucket> arrival_profile{{0, 1500}};
  double sigma_fid = 0.03;
  double calibration_cycle = 24 * 3600.0;
  double calibration_staleness = 0;  // seconds between a cycle and its publication
  double warmup = 0;                 // arrivals before this time are excluded from metrics
  bool drain = true;                 // keep executing after `duration` until every queue is empty
};

inline ClusterSpec default_cluster() {
  QpuSpec q;
  q.count = 8;
  return ClusterSpec{{q}, {}};
}

struct ClusterConfig {
  ClusterSpec spec = default_cluster();
  TimingModel timing;
  std::vector<ClassicalNode> classical_nodes{{"cpu-node-0", AcceleratorKind::CPU, 32, 1e10, 0},
                                             {"gpu-node-0", AcceleratorKind::GPU, 4, 1e12, 0}};
};

struct Config {
  ClusterConfig cluster;
  WorkloadParams workload;
  SchedulerConfig scheduler;
  SimulationConfig simulation;
  EstimatorConfig estimator;
  std::uint64_t seed = 1;

  void validate() const {
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (!(simulation.duration >= 0)) fail("simulation.duration must be >= 0");
    if (simulation.arrival_profile.empty()) fail("simulation.arrival_profile must not be empty");
    if (simulation.arrival_profile.front().hour != 0) fail("simulation.arrival_profile must start at hour 0");
    for (std::size_t i = 0; i < simulation.arrival_profile.size(); ++i) {
      const auto& b = simulation.arrival_profile[i];
      if (!(b.rate > 0)) fail("arrival rates must be > 0");
      if (b.hour < 0 || b.hour > 23) fail("arrival profile hours must lie in [0, 23]");
      if (i > 0 && b.hour <= simulation.arrival_profile[i - 1].hour) fail("arrival profile hours must increase");
    }
    if (!(scheduler.trigger_interval > 0)) fail("scheduler.trigger_interval must be > 0");
    if (scheduler.trigger_queue_limit < 1) fail("scheduler.trigger_queue_limit must be >= 1");
    try {
      scheduler.preference.validate();
      scheduler.nsga.validate();
    } catch (const ParameterError& e) {
      fail(e.what());
    }
    if (!(simulation.sigma_fid >= 0)) fail("simulation.sigma_fid must be >= 0");
    if (!(simulation.calibration_cycle > 0)) fail("simulation.calibration_cycle must be > 0");
    if (workload.width_min < 1 || workload.depth_min < 1) fail("workload minima must be >= 1");
    if (workload.shots_min < 1 || workload.shots_max < workload.shots_min) fail("workload shots range invalid");
    if (workload.two_qubit_fraction < 0 || workload.two_qubit_fraction > 1) fail("workload.two_qubit_fraction must be in [0,1]");
    if (workload.cut_fraction < 0 || workload.cut_fraction > 1) fail("workload.cut_fraction must be in [0,1]");
    if (estimator.degree < 1) fail("estimator.degree must be >= 1");
    if (estimator.plan_count < 1) fail("estimator.plan_count must be >= 1");
    if (estimator.overhead_base < 6 || estimator.overhead_base > 8) fail("estimator.overhead_base must lie in [6, 8]");
    if (estimator.kfolds < 2) fail("estimator.kfolds must be >= 2");
    for (const auto& a : estimator.accelerators)
      if (!(a.speed > 0)) fail("accelerator '" + a.id + "' speed must be > 0");
    if (workload.cut_fraction > 0) {
      for (const auto& a : estimator.accelerators) {
        bool hosted = false;
        for (const auto& n : cluster.classical_nodes) hosted = hosted || n.kind == a.kind;
        if (!hosted) fail(std::string("no classical node hosts accelerator kind ") + to_string(a.kind));
      }
    }
    if (cluster.spec.qpus.empty()) fail("cluster.qpus must not be empty");
  }
};

}  // namespace qorch
