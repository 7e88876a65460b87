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
#include <vector>

#include "qorch/cloudsim/simulation.hpp"

namespace qorch {

struct TimePoint {
  double start = 0;
  double end = 0;
  int completed = 0;
  double mean_jct = 0;
  double mean_fidelity = 0;
  double utilization = 0;  // busy QPU-seconds over QPU-seconds in the bucket
};

struct SimMetrics {
  int completed = 0;
  double mean_jct = 0;
  double p95_jct = 0;
  double mean_fidelity = 0;
  double mean_est_fidelity = 0;
  std::vector<double> utilization;
  double mean_utilization = 0;
  double imbalance = 0;  // (max - min) / max of per-QPU active runtime
  std::vector<TimePoint> series;
};

// Nearest-rank percentile.
inline double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

inline double load_imbalance(const std::vector<double>& runtime) {
  if (runtime.empty()) return 0;
  const auto [lo, hi] = std::minmax_element(runtime.begin(), runtime.end());
  return *hi > 0 ? (*hi - *lo) / *hi : 0.0;
}

// Aggregates over the records that arrived after the warm-up period. The time
// series buckets completions by finish time.
inline SimMetrics compute_metrics(const std::vector<JobRecord>& records, const std::vector<double>& active_runtime,
                                  double duration, double warmup = 0, double bucket = 300) {
  SimMetrics m;
  std::vector<double> jct;
  double fid = 0, est_fid = 0;
  for (const JobRecord& r : records) {
    if (r.arrival < warmup) continue;
    jct.push_back(r.jct());
    fid += r.true_fidelity;
    est_fid += r.est_fidelity;
  }
  m.completed = static_cast<int>(jct.size());
  if (m.completed > 0) {
    double sum = 0;
    for (double j : jct) sum += j;
    m.mean_jct = sum / m.completed;
    m.p95_jct = percentile(jct, 95);
    m.mean_fidelity = fid / m.completed;
    m.mean_est_fidelity = est_fid / m.completed;
  }
  for (double a : active_runtime) m.utilization.push_back(duration > 0 ? std::clamp(a / duration, 0.0, 1.0) : 0.0);
  if (!m.utilization.empty()) {
    for (double u : m.utilization) m.mean_utilization += u;
    m.mean_utilization /= static_cast<double>(m.utilization.size());
  }
  m.imbalance = load_imbalance(active_runtime);

  if (duration > 0 && bucket > 0) {
    const int n = static_cast<int>(std::ceil(duration / bucket));
    m.series.resize(n);
    for (int b = 0; b < n; ++b) {
      m.series[b].start = b * bucket;
      m.series[b].end = std::min(duration, (b + 1) * bucket);
    }
    for (const JobRecord& r : records) {
      const double qpu_end = r.started + r.true_time;
      for (auto& p : m.series) p.utilization += detail::overlap(r.started, qpu_end, p.start, p.end);
      if (r.arrival < warmup || r.finished >= duration) continue;
      auto& p = m.series[static_cast<std::size_t>(r.finished / bucket)];
      ++p.completed;
      p.mean_jct += r.jct();
      p.mean_fidelity += r.true_fidelity;
    }
    const double nq = static_cast<double>(std::max<std::size_t>(1, active_runtime.size()));
    for (auto& p : m.series) {
      if (p.completed > 0) {
        p.mean_jct /= p.completed;
        p.mean_fidelity /= p.completed;
      }
      p.utilization /= (p.end - p.start) * nq;
    }
  }
  return m;
}

inline SimMetrics compute_metrics(const SimReport& rep, double bucket = 300) {
  return compute_metrics(rep.records, rep.active_runtime, rep.duration, rep.warmup, bucket);
}

}  // namespace qorch
