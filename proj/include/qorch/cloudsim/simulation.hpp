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
#include <chrono>
#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "qorch/cloudsim/arrival.hpp"
#include "qorch/cloudsim/config.hpp"
#include "qorch/cloudsim/oracle.hpp"
#include "qorch/cloudsim/workload.hpp"
#include "qorch/error.hpp"
#include "qorch/estimator/regression.hpp"
#include "qorch/scheduler/baseline.hpp"
#include "qorch/scheduler/job.hpp"
#include "qorch/scheduler/mcdm.hpp"
#include "qorch/scheduler/nsga2.hpp"

namespace qorch {

struct JobRecord {
  JobId id = 0;
  double arrival = 0;
  double scheduled = 0;
  double started = 0;
  double finished = 0;  // quantum finish plus knitting
  std::string qpu;
  int qpu_index = 0;
  double est_fidelity = 0;
  double true_fidelity = 0;
  double est_time = 0;
  double true_time = 0;
  int cuts = 0;
  double knit_time = 0;
  std::string knit_node;

  double jct() const { return finished - arrival; }
};

struct FrontRow {
  int cycle = 0;
  double time = 0;
  int batch_size = 0;
  int front_size = 0;
  int generations = 0;
  double f1_min = 0, f1_max = 0, f2_min = 0, f2_max = 0;
  double f1_chosen = 0, f2_chosen = 0;
};

struct QueueSample {
  double time = 0;
  int pending = 0;
};

struct CalibrationSnapshot {
  double time = 0;
  std::string qpu_id;
  CalibrationData calibration;
};

struct CycleTiming {
  int cycle = 0;
  int batch_size = 0;
  double preprocess_s = 0;
  double optimize_s = 0;
  double select_s = 0;
};

// The inputs of one scheduling cycle, enough to replay it offline.
struct BatchCapture {
  int cycle = 0;
  double time = 0;
  std::vector<RawJob> jobs;
  std::vector<double> queue_wait;
};

struct SimReport {
  std::vector<JobRecord> records;  // in completion order
  std::vector<Rejection> rejected;
  int arrivals = 0;
  int pending_at_end = 0;  // never finished: unscheduled, queued or running at the horizon
  double duration = 0;
  double warmup = 0;
  double end_time = 0;
  std::vector<std::string> qpu_ids;
  std::vector<double> active_runtime;  // within [0, duration]
  std::vector<FrontRow> fronts;
  std::vector<QueueSample> queue_ts;
  std::vector<CalibrationSnapshot> calibrations;
  std::vector<CycleTiming> timings;
  std::optional<BatchCapture> first_batch;
};

struct SimOptions {
  std::optional<RegressionModel> model;  // skip training when given
  bool capture_first_batch = false;
};

// Trains the execution-time model on oracle samples drawn from the configured
// workload and cluster templates.
inline RegressionModel train_time_model(const Config& cfg, const std::vector<TemplateQpu>& templates,
                                        int width_cap) {
  WorkloadParams w = cfg.workload;
  if (w.width_max <= 0 || w.width_max > width_cap) w.width_max = width_cap;
  const auto data = sample_training_set(w, templates, cfg.cluster.timing, cfg.estimator.training_samples,
                                        cfg.estimator.training_noise, seed_for(cfg.seed, "training"));
  return fit_regression(data, cfg.estimator.degree);
}

inline EstimatorContext make_estimator_context(const EstimatorConfig& e, RegressionModel model) {
  return {std::move(model), e.overhead_base, e.knit_constant, e.parallel_fragments};
}

inline int largest_qpu(const std::vector<QpuState>& qpus) {
  int cap = 0;
  for (const auto& q : qpus) cap = std::max(cap, q.coupling.size());
  return cap;
}

// One scheduling decision over a pre-processed batch.
struct ScheduleOutcome {
  Assignment assignment;
  std::optional<ParetoFront> front;
  std::size_t chosen = 0;
  double optimize_s = 0;
  double select_s = 0;
};

inline ScheduleOutcome schedule_batch(const std::vector<Job>& jobs, const std::vector<double>& queue_wait,
                                      const SchedulerConfig& sc, std::uint64_t root_seed, int cycle) {
  using clock = std::chrono::steady_clock;
  ScheduleOutcome out;
  if (sc.policy == Policy::FCFS) {
    out.assignment = fcfs_schedule(jobs);
    return out;
  }
  NsgaParams p = sc.nsga;
  p.seed = seed_for(root_seed, "optimizer", static_cast<std::uint64_t>(cycle));
  const auto t0 = clock::now();
  out.front = nsga2_optimize(jobs, queue_wait, p);
  const auto t1 = clock::now();
  out.chosen = select_index(*out.front, sc.preference);
  out.assignment = out.front->entries[out.chosen].assignment;
  const auto t2 = clock::now();
  out.optimize_s = std::chrono::duration<double>(t1 - t0).count();
  out.select_s = std::chrono::duration<double>(t2 - t1).count();
  return out;
}

namespace detail {

enum class EventKind { Calibration = 0, Publish = 1, JobFinish = 2, Arrival = 3, Trigger = 4 };

struct Event {
  double time = 0;
  EventKind kind = EventKind::Arrival;
  std::uint64_t seq = 0;
  std::int64_t payload = 0;

  // priority_queue pops the largest, so order is reversed.
  bool operator<(const Event& o) const {
    if (time != o.time) return time > o.time;
    if (kind != o.kind) return kind > o.kind;
    return seq > o.seq;
  }
};

struct QueuedJob {
  Job job;
  AcceleratorKind knit_kind = AcceleratorKind::GPU;
  QpuEstimate est;
  double scheduled = 0;
};

struct Running {
  QueuedJob q;
  double started = 0;
  GroundTruth truth;
};

inline double overlap(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

}  // namespace detail

inline SimReport run_simulation(const Config& cfg, const SimOptions& opts = {}) {
  cfg.validate();
  using detail::Event;
  using detail::EventKind;
  using clock = std::chrono::steady_clock;

  const std::uint64_t seed = cfg.seed;
  const auto& sim = cfg.simulation;
  std::vector<QpuState> truth = build_cluster(cfg.cluster.spec, seed);
  std::vector<QpuState> published = truth;
  const auto templates = make_templates(truth);
  const int width_cap = largest_qpu(truth);
  const std::size_t nq = truth.size();

  std::vector<TimingModel> timing;
  for (const auto& q : truth) timing.push_back(jitter_timing(cfg.cluster.timing, seed, q.id));

  const EstimatorContext ctx = make_estimator_context(
      cfg.estimator, opts.model ? *opts.model : train_time_model(cfg, templates, width_cap));

  WorkloadContext wc{cfg.workload, width_cap, templates, cfg.estimator, &ctx};

  SimReport rep;
  rep.duration = sim.duration;
  rep.warmup = sim.warmup;
  for (const auto& q : truth) rep.qpu_ids.push_back(q.id);
  rep.active_runtime.assign(nq, 0.0);
  auto snapshot = [&](double t) {
    for (const auto& q : truth) rep.calibrations.push_back({t, q.id, q.calibration});
  };
  snapshot(0.0);

  std::priority_queue<Event> events;
  std::uint64_t seq = 0;
  auto push = [&](double t, EventKind k, std::int64_t payload = 0) { events.push({t, k, seq++, payload}); };

  Rng arrival_rng = make_rng(seed, "arrival");
  const std::vector<double> arrivals = arrival_process(sim.arrival_profile, sim.duration, arrival_rng);
  rep.arrivals = static_cast<int>(arrivals.size());
  for (std::size_t i = 0; i < arrivals.size(); ++i) push(arrivals[i], EventKind::Arrival, static_cast<std::int64_t>(i));
  if (!arrivals.empty()) push(cfg.scheduler.trigger_interval, EventKind::Trigger, 0);
  for (double t = sim.calibration_cycle; t <= sim.duration; t += sim.calibration_cycle)
    push(t, EventKind::Calibration);

  std::vector<RawJob> pending;
  std::vector<std::deque<detail::QueuedJob>> queues(nq);
  std::vector<std::optional<detail::Running>> running(nq);
  std::vector<ClassicalNode> nodes = cfg.cluster.classical_nodes;
  std::vector<std::vector<double>> knit_ends(nodes.size());
  int cycle = 0;
  bool size_trigger_armed = false;

  auto start_next = [&](std::size_t x, double now) {
    if (running[x] || queues[x].empty()) return;
    detail::Running r{std::move(queues[x].front()), now, {}};
    queues[x].pop_front();
    Rng oracle = make_rng(seed, "oracle", static_cast<std::uint64_t>(r.q.job.id));
    r.truth = ground_truth_execution(r.q.job, truth[x], timing[x], sim.sigma_fid, cfg.estimator.parallel_fragments,
                                     oracle);
    truth[x].busy_until = now + r.truth.true_time;
    push(now + r.truth.true_time, EventKind::JobFinish, static_cast<std::int64_t>(x));
    running[x] = std::move(r);
  };

  auto queue_wait_at = [&](double now) {
    std::vector<double> w(nq, 0.0);
    for (std::size_t x = 0; x < nq; ++x) {
      if (running[x]) w[x] += std::max(0.0, running[x]->q.est.t - (now - running[x]->started));
      for (const auto& qj : queues[x]) w[x] += qj.est.t;
    }
    return w;
  };

  auto run_trigger = [&](double now) {
    if (pending.empty()) return;
    CycleTiming ct{cycle, static_cast<int>(pending.size()), 0, 0, 0};
    const auto t0 = clock::now();
    PreprocessResult pre = preprocess(pending, published, ctx);
    ct.preprocess_s = std::chrono::duration<double>(clock::now() - t0).count();
    for (auto& r : pre.rejected) rep.rejected.push_back(r);
    const std::vector<double> wait = queue_wait_at(now);
    if (opts.capture_first_batch && !rep.first_batch) rep.first_batch = BatchCapture{cycle, now, pending, wait};

    if (!pre.jobs.empty()) {
      const ScheduleOutcome out = schedule_batch(pre.jobs, wait, cfg.scheduler, seed, cycle);
      ct.optimize_s = out.optimize_s;
      ct.select_s = out.select_s;
      FrontRow row{cycle, now, static_cast<int>(pre.jobs.size()), 1, 0, 0, 0, 0, 0, 0, 0};
      const ObjectivePoint chosen = evaluate_objectives(out.assignment, pre.jobs, wait);
      row.f1_chosen = chosen.f1;
      row.f2_chosen = chosen.f2;
      if (out.front) {
        const auto& e = out.front->entries;
        row.front_size = static_cast<int>(e.size());
        row.generations = out.front->generations;
        row.f1_min = row.f1_max = e.front().point.f1;
        row.f2_min = row.f2_max = e.front().point.f2;
        for (const auto& fe : e) {
          row.f1_min = std::min(row.f1_min, fe.point.f1);
          row.f1_max = std::max(row.f1_max, fe.point.f1);
          row.f2_min = std::min(row.f2_min, fe.point.f2);
          row.f2_max = std::max(row.f2_max, fe.point.f2);
        }
      } else {
        row.f1_min = row.f1_max = chosen.f1;
        row.f2_min = row.f2_max = chosen.f2;
      }
      rep.fronts.push_back(row);

      std::size_t raw_i = 0;
      for (std::size_t i = 0; i < pre.jobs.size(); ++i) {
        while (pending[raw_i].id != pre.jobs[i].id) ++raw_i;
        const int x = out.assignment[i];
        const QpuEstimate est = pre.jobs[i].at(x);
        queues[x].push_back({std::move(pre.jobs[i]), pending[raw_i].knit_kind, est, now});
      }
      for (std::size_t x = 0; x < nq; ++x) start_next(x, now);
    }
    rep.timings.push_back(ct);
    pending.clear();
    ++cycle;
    rep.queue_ts.push_back({now, 0});
  };

  auto knit = [&](detail::Running& r, JobRecord& rec, double now) {
    const int fragments = static_cast<int>(r.q.job.parts.size());
    if (fragments < 2) return;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      auto& ends = knit_ends[n];
      ends.erase(std::remove_if(ends.begin(), ends.end(), [&](double e) { return e <= now; }), ends.end());
      nodes[n].utilization = static_cast<double>(ends.size()) / std::max(1, nodes[n].count);
    }
    const std::size_t n = filter_score_classical({r.q.knit_kind, 1, 0.0}, nodes);
    const double flops = knitting_flops(r.q.job.achieved_cuts, fragments, cfg.estimator.overhead_base,
                                        cfg.estimator.knit_constant);
    rec.knit_time = flops / nodes[n].speed;
    rec.knit_node = nodes[n].id;
    knit_ends[n].push_back(now + rec.knit_time);
  };

  while (!events.empty()) {
    const Event ev = events.top();
    if (!sim.drain && ev.time > sim.duration) break;
    events.pop();
    const double now = ev.time;
    rep.end_time = std::max(rep.end_time, now);
    switch (ev.kind) {
      case EventKind::Calibration: {
        for (auto& q : truth) q = advance_calibration(q, seed, cfg.cluster.spec.drift);
        snapshot(now);
        if (sim.calibration_staleness > 0)
          push(now + sim.calibration_staleness, EventKind::Publish);
        else
          for (std::size_t x = 0; x < nq; ++x) published[x].calibration = truth[x].calibration;
        break;
      }
      case EventKind::Publish:
        for (std::size_t x = 0; x < nq; ++x) published[x].calibration = truth[x].calibration;
        break;
      case EventKind::Arrival: {
        pending.push_back(make_job(wc, seed, ev.payload, now));
        rep.queue_ts.push_back({now, static_cast<int>(pending.size())});
        if (static_cast<int>(pending.size()) >= cfg.scheduler.trigger_queue_limit && !size_trigger_armed) {
          size_trigger_armed = true;
          push(now, EventKind::Trigger, 1);
        }
        break;
      }
      case EventKind::Trigger: {
        if (ev.payload == 1) size_trigger_armed = false;
        run_trigger(now);
        if (ev.payload == 0) {
          const double next = now + cfg.scheduler.trigger_interval;
          // Periodic triggers run through the arrival window, then only while work remains.
          if (next <= sim.duration || (sim.drain && now < sim.duration))
            push(next, EventKind::Trigger, 0);
        }
        break;
      }
      case EventKind::JobFinish: {
        const auto x = static_cast<std::size_t>(ev.payload);
        detail::Running r = std::move(*running[x]);
        running[x].reset();
        JobRecord rec;
        rec.id = r.q.job.id;
        rec.arrival = r.q.job.arrival_time;
        rec.scheduled = r.q.scheduled;
        rec.started = r.started;
        rec.qpu = truth[x].id;
        rec.qpu_index = static_cast<int>(x);
        rec.est_fidelity = r.q.est.f;
        rec.true_fidelity = r.truth.true_fidelity;
        rec.est_time = r.q.est.t;
        rec.true_time = r.truth.true_time;
        rec.cuts = r.q.job.achieved_cuts;
        knit(r, rec, now);
        rec.finished = now + rec.knit_time;
        rep.active_runtime[x] += detail::overlap(r.started, now, 0.0, sim.duration);
        rep.records.push_back(std::move(rec));
        start_next(x, now);
        break;
      }
    }
  }

  rep.pending_at_end = static_cast<int>(pending.size());
  for (std::size_t x = 0; x < nq; ++x) {
    rep.pending_at_end += static_cast<int>(queues[x].size());
    if (running[x]) {
      ++rep.pending_at_end;
      rep.active_runtime[x] += detail::overlap(running[x]->started, sim.duration, 0.0, sim.duration);
    }
  }
  const int accounted = static_cast<int>(rep.records.size() + rep.rejected.size()) + rep.pending_at_end;
  if (accounted != rep.arrivals)
    throw InvariantViolation("job conservation broken: " + std::to_string(accounted) + " accounted of " +
                             std::to_string(rep.arrivals) + " arrivals");
  return rep;
}

}  // namespace qorch
