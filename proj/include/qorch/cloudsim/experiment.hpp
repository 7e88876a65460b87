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
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qorch/cloudsim/config.hpp"
#include "qorch/cloudsim/metrics.hpp"
#include "qorch/cloudsim/simulation.hpp"
#include "qorch/error.hpp"

namespace qorch {

// One sweep axis over a base configuration. Repetition r runs with seed
// base.seed + r.
struct ExperimentSpec {
  std::string name = "experiment";
  Config base;
  std::string parameter;            // qpu_count | load | preference | policy
  std::vector<std::string> values;  // textual so every axis shares one type
  int repetitions = 1;

  void validate() const {
    if (values.empty()) throw ConfigError("experiment sweep values must not be empty");
    if (repetitions < 1) throw ConfigError("experiment repetitions must be >= 1");
    static const char* axes[] = {"qpu_count", "load", "preference", "policy"};
    if (std::find(std::begin(axes), std::end(axes), parameter) == std::end(axes))
      throw ConfigError("unknown sweep parameter '" + parameter + "' (expected qpu_count, load, preference or policy)");
  }
};

inline double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ConfigError(what + " value '" + s + "' is not a number");
  return v;
}

// The load axis rescales the arrival profile so its daily mean equals the
// value; the profile's shape is kept.
inline Config apply_sweep(Config cfg, const std::string& parameter, const std::string& value) {
  if (parameter == "qpu_count") {
    const double n = parse_number(value, "qpu_count");
    if (n < 1 || n != static_cast<int>(n)) throw ConfigError("qpu_count must be a positive integer");
    if (cfg.cluster.spec.qpus.size() != 1)
      throw ConfigError("a qpu_count sweep needs a cluster with exactly one QPU entry");
    cfg.cluster.spec.qpus[0].count = static_cast<int>(n);
    cfg.cluster.spec.qpus[0].id.clear();
  } else if (parameter == "load") {
    const double target = parse_number(value, "load");
    if (!(target > 0)) throw ConfigError("load must be > 0");
    double mean = 0;
    for (int h = 0; h < 24; ++h) mean += arrival_rate_at(cfg.simulation.arrival_profile, h * 3600.0);
    mean /= 24.0;
    for (auto& b : cfg.simulation.arrival_profile) b.rate *= target / mean;
  } else if (parameter == "preference") {
    cfg.scheduler.preference = parse_preference(value);
  } else if (parameter == "policy") {
    if (value == "pareto")
      cfg.scheduler.policy = Policy::Pareto;
    else if (value == "fcfs")
      cfg.scheduler.policy = Policy::FCFS;
    else
      throw ConfigError("unknown policy '" + value + "'");
  } else {
    throw ConfigError("unknown sweep parameter '" + parameter + "'");
  }
  cfg.validate();
  return cfg;
}

struct ExperimentRun {
  std::string value;
  int repetition = 0;
  std::uint64_t seed = 0;
  SimReport report;
  SimMetrics metrics;
  int max_pending = 0;
};

// Runs every (value, repetition) point with up to `jobs` worker threads. Each
// point is self-contained, so the results do not depend on `jobs`.
inline std::vector<ExperimentRun> run_experiment(const ExperimentSpec& spec, int jobs) {
  spec.validate();
  std::vector<ExperimentRun> runs;
  std::vector<Config> configs;
  for (const auto& v : spec.values) {
    const Config swept = apply_sweep(spec.base, spec.parameter, v);
    for (int r = 0; r < spec.repetitions; ++r) {
      Config c = swept;
      c.seed = spec.base.seed + static_cast<std::uint64_t>(r);
      configs.push_back(c);
      runs.push_back({v, r, c.seed, {}, {}, 0});
    }
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        runs[i].report = run_simulation(configs[i]);
        runs[i].metrics = compute_metrics(runs[i].report);
        for (const auto& s : runs[i].report.queue_ts) runs[i].max_pending = std::max(runs[i].max_pending, s.pending);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::clamp(jobs, 1, static_cast<int>(runs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return runs;
}

}  // namespace qorch
