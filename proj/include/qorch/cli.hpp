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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qorch/cloudsim/experiment.hpp"
#include "qorch/cloudsim/metrics.hpp"
#include "qorch/cloudsim/oracle.hpp"
#include "qorch/cloudsim/simulation.hpp"
#include "qorch/cloudsim/workload.hpp"
#include "qorch/error.hpp"
#include "qorch/io/csv.hpp"
#include "qorch/io/json.hpp"

namespace qorch::cli {

namespace fs = std::filesystem;
using io::json;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string model;
  std::string policy;
  std::string preference;
};

inline Config resolve_config(const CommonOptions& o) {
  Config cfg = o.config.empty() ? Config{} : io::load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.policy.empty()) cfg.scheduler.policy = io::parse_policy(o.policy);
  if (!o.preference.empty()) cfg.scheduler.preference = parse_preference(o.preference);
  if (!o.model.empty()) cfg.estimator.model_path = o.model;
  cfg.validate();
  return cfg;
}

inline void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory '" + dir + "': " + ec.message());
}

inline void emit(const std::string& path, const json& j, std::ostream& out) {
  if (path.empty() || path == "-")
    out << j.dump(2) << "\n";
  else
    io::write_json_file(path, j);
}

// The cluster as the scheduler first sees it, plus the time model the
// estimator uses: loaded from disk when configured, otherwise trained on
// oracle samples.
struct Environment {
  std::vector<QpuState> qpus;
  std::vector<TemplateQpu> templates;
  int width_cap = 0;
  EstimatorContext ctx;
};

inline Environment make_environment(const Config& cfg) {
  Environment env;
  env.qpus = build_cluster(cfg.cluster.spec, cfg.seed);
  env.templates = make_templates(env.qpus);
  env.width_cap = largest_qpu(env.qpus);
  RegressionModel model = cfg.estimator.model_path.empty()
                              ? train_time_model(cfg, env.templates, env.width_cap)
                              : io::model_from_json(io::read_json_file(cfg.estimator.model_path));
  env.ctx = make_estimator_context(cfg.estimator, std::move(model));
  return env;
}

inline json summary_json(const SimReport& rep, const SimMetrics& m) {
  int max_pending = 0;
  for (const auto& s : rep.queue_ts) max_pending = std::max(max_pending, s.pending);
  return {{"arrivals", rep.arrivals},
          {"completed", rep.records.size()},
          {"rejected", rep.rejected.size()},
          {"pending_at_end", rep.pending_at_end},
          {"cycles", rep.fronts.size()},
          {"duration", rep.duration},
          {"end_time", rep.end_time},
          {"mean_jct", m.mean_jct},
          {"p95_jct", m.p95_jct},
          {"mean_fidelity", m.mean_fidelity},
          {"mean_est_fidelity", m.mean_est_fidelity},
          {"mean_utilization", m.mean_utilization},
          {"imbalance", m.imbalance},
          {"max_pending", max_pending}};
}

inline void write_report(const std::string& dir, const SimReport& rep, bool timings) {
  ensure_dir(dir);
  const fs::path d(dir);
  const SimMetrics m = compute_metrics(rep);
  io::records_csv(rep).save((d / "records.csv").string());
  io::qpu_load_csv(rep).save((d / "qpu_load.csv").string());
  io::fronts_csv(rep).save((d / "fronts.csv").string());
  io::queue_ts_csv(rep).save((d / "queue_ts.csv").string());
  io::calibration_csv(rep.calibrations).save((d / "calibration.csv").string());
  io::timeseries_csv(m).save((d / "timeseries.csv").string());
  io::rejections_csv(rep).save((d / "rejections.csv").string());
  io::write_json_file((d / "summary.json").string(), summary_json(rep, m));
  if (timings) io::timings_csv(rep).save((d / "timings.csv").string());
}

// ---- subcommands ----------------------------------------------------------

inline int cmd_gen_workload(const CommonOptions& o, int count, const std::string& out_path, std::ostream& out) {
  const Config cfg = resolve_config(o);
  const Environment env = make_environment(cfg);
  const WorkloadContext wc{cfg.workload, env.width_cap, env.templates, cfg.estimator, &env.ctx};
  std::vector<double> times;
  Rng rng = make_rng(cfg.seed, "arrival");
  if (count > 0) {
    // Extend the horizon until enough arrivals exist, then keep the first `count`.
    double horizon = std::max(cfg.simulation.duration, 3600.0);
    for (;;) {
      Rng r = rng;
      times = arrival_process(cfg.simulation.arrival_profile, horizon, r);
      if (static_cast<int>(times.size()) >= count) break;
      horizon *= 2;
    }
    times.resize(count);
  } else {
    times = arrival_process(cfg.simulation.arrival_profile, cfg.simulation.duration, rng);
  }
  std::vector<RawJob> jobs;
  for (std::size_t i = 0; i < times.size(); ++i) jobs.push_back(make_job(wc, cfg.seed, static_cast<JobId>(i), times[i]));
  emit(out_path, io::batch_to_json(jobs), out);
  return 0;
}

inline int cmd_train_model(const CommonOptions& o, const std::string& data_path, const std::string& out_dir,
                           std::ostream& out) {
  const Config cfg = resolve_config(o);
  std::vector<Sample> data;
  if (!data_path.empty()) {
    data = io::read_dataset_csv(data_path);
  } else {
    const auto qpus = build_cluster(cfg.cluster.spec, cfg.seed);
    const auto templates = make_templates(qpus);
    WorkloadParams w = cfg.workload;
    const int cap = largest_qpu(qpus);
    if (w.width_max <= 0 || w.width_max > cap) w.width_max = cap;
    data = sample_training_set(w, templates, cfg.cluster.timing, cfg.estimator.training_samples,
                               cfg.estimator.training_noise, seed_for(cfg.seed, "training"));
  }
  const RegressionModel model = fit_regression(data, cfg.estimator.degree);
  const KFoldReport rep = kfold_r2_report(data, cfg.estimator.degree, cfg.estimator.kfolds, seed_for(cfg.seed, "kfold"));
  const json report = io::to_json(rep, cfg.estimator.degree, data.size());
  if (out_dir.empty()) {
    out << json{{"model", io::to_json(model)}, {"kfold", report}}.dump(2) << "\n";
    return 0;
  }
  ensure_dir(out_dir);
  const fs::path d(out_dir);
  io::write_json_file((d / "model.json").string(), io::to_json(model));
  io::write_json_file((d / "kfold.json").string(), report);
  if (data_path.empty()) io::dataset_csv(data).save((d / "dataset.csv").string());
  out << "mean " << cfg.estimator.kfolds << "-fold R^2: " << io::fmt(rep.mean_r2) << "\n";
  return 0;
}

inline int cmd_estimate(const CommonOptions& o, const std::string& circuit_path, const std::string& out_path,
                        const std::string& transpiled_dir, std::ostream& out) {
  const Config cfg = resolve_config(o);
  const Circuit c = io::circuit_from_json(io::read_json_file(circuit_path));
  const Environment env = make_environment(cfg);
  const auto plans = generate_resource_plans(c, env.templates, cfg.estimator.accelerators, cfg.estimator.k_set,
                                             cfg.estimator.plan_count, env.ctx);
  emit(out_path, io::to_json(plans), out);
  if (!transpiled_dir.empty()) {
    ensure_dir(transpiled_dir);
    for (const TemplateQpu& t : env.templates) {
      if (c.width > t.coupling.size()) continue;
      io::write_json_file((fs::path(transpiled_dir) / (t.model + ".json")).string(), io::to_json(transpile(c, t)));
    }
  }
  return 0;
}

inline int cmd_schedule(const CommonOptions& o, const std::string& batch_path, const std::string& out_path,
                        std::ostream& out) {
  const Config cfg = resolve_config(o);
  const BatchCapture batch = io::batch_from_json(io::read_json_file(batch_path));
  const Environment env = make_environment(cfg);
  std::vector<double> wait = batch.queue_wait;
  if (wait.empty()) wait.assign(env.qpus.size(), 0.0);
  if (wait.size() != env.qpus.size())
    throw ConfigError("batch queue_wait has " + std::to_string(wait.size()) + " entries but the cluster has " +
                      std::to_string(env.qpus.size()) + " QPUs");
  const PreprocessResult pre = preprocess(batch.jobs, env.qpus, env.ctx);
  if (pre.jobs.empty()) throw NoFeasiblePlan("no job in the batch fits any QPU");
  const ScheduleOutcome res = schedule_batch(pre.jobs, wait, cfg.scheduler, cfg.seed, batch.cycle);
  ParetoFront front;
  std::size_t selected = res.chosen;
  if (res.front) {
    front = *res.front;
  } else {
    front.entries.push_back({res.assignment, evaluate_objectives(res.assignment, pre.jobs, wait)});
    selected = 0;
  }
  std::vector<std::string> ids;
  for (const auto& q : env.qpus) ids.push_back(q.id);
  json j = io::front_to_json(front, ids, pre.jobs, cfg.scheduler.preference, selected);
  j["policy"] = to_string(cfg.scheduler.policy);
  j["cycle"] = batch.cycle;
  json rejected = json::array();
  for (const auto& r : pre.rejected) rejected.push_back({{"id", r.id}, {"reason", r.reason}});
  j["rejected"] = rejected;
  emit(out_path, j, out);
  return 0;
}

inline int cmd_simulate(const CommonOptions& o, const std::string& out_dir, bool timings,
                        const std::string& capture_path, std::ostream& out) {
  const Config cfg = resolve_config(o);
  SimOptions opts;
  opts.capture_first_batch = !capture_path.empty();
  if (!cfg.estimator.model_path.empty())
    opts.model = io::model_from_json(io::read_json_file(cfg.estimator.model_path));
  const SimReport rep = run_simulation(cfg, opts);
  write_report(out_dir, rep, timings);
  if (!capture_path.empty()) {
    if (!rep.first_batch) throw Error("no scheduling cycle ran, nothing to capture");
    io::write_json_file(capture_path, io::batch_to_json(*rep.first_batch));
  }
  const SimMetrics m = compute_metrics(rep);
  out << "completed " << rep.records.size() << "/" << rep.arrivals << " jobs, mean JCT " << io::fmt(m.mean_jct)
      << " s, mean fidelity " << io::fmt(m.mean_fidelity) << ", imbalance " << io::fmt(m.imbalance) << "\n";
  return 0;
}

inline ExperimentSpec load_experiment(const std::string& path, const CommonOptions& o) {
  const json j = io::read_json_file(path);
  io::detail::Fields f(j, "");
  ExperimentSpec spec;
  f.get("name", spec.name);
  f.get("repetitions", spec.repetitions);
  if (f.has("base")) {
    const json& b = f.raw("base");
    if (b.is_string()) {
      fs::path p(b.get<std::string>());
      if (p.is_relative()) p = fs::path(path).parent_path() / p;
      spec.base = io::load_config(p.string());
    } else {
      spec.base = io::config_from_json(b);
    }
  } else if (!o.config.empty()) {
    spec.base = io::load_config(o.config);
  }
  if (!f.has("sweep")) throw ConfigError(path + ": experiment needs a sweep");
  io::detail::Fields s(f.raw("sweep"), "sweep");
  s.get("parameter", spec.parameter);
  if (s.has("values")) {
    for (const json& v : s.raw("values")) spec.values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  }
  s.finish();
  f.finish();
  if (o.seed) spec.base.seed = *o.seed;
  if (!o.policy.empty()) spec.base.scheduler.policy = io::parse_policy(o.policy);
  if (!o.preference.empty()) spec.base.scheduler.preference = parse_preference(o.preference);
  if (!o.model.empty()) spec.base.estimator.model_path = o.model;
  spec.validate();
  return spec;
}

inline int cmd_experiment(const CommonOptions& o, const std::string& spec_path, const std::string& out_dir, int jobs,
                          std::ostream& out) {
  const ExperimentSpec spec = load_experiment(spec_path, o);
  const auto runs = run_experiment(spec, jobs);
  ensure_dir(out_dir);
  io::CsvWriter table({"name", "parameter", "value", "repetition", "seed", "arrivals", "completed", "rejected",
                       "mean_jct", "p95_jct", "mean_fidelity", "mean_utilization", "imbalance", "max_pending"});
  for (const auto& r : runs) {
    const std::string sub = spec.parameter + "=" + r.value + "/rep" + std::to_string(r.repetition);
    write_report((fs::path(out_dir) / sub).string(), r.report, false);
    table.add(spec.name, spec.parameter, r.value, r.repetition, static_cast<std::int64_t>(r.seed), r.report.arrivals,
              static_cast<int>(r.report.records.size()), static_cast<int>(r.report.rejected.size()), r.metrics.mean_jct,
              r.metrics.p95_jct, r.metrics.mean_fidelity, r.metrics.mean_utilization, r.metrics.imbalance,
              r.max_pending);
  }
  table.save((fs::path(out_dir) / "experiment.csv").string());
  out << "wrote " << runs.size() << " runs to " << out_dir << "\n";
  return 0;
}

// ---- entry point ----------------------------------------------------------

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Hybrid quantum-classical cloud scheduler and simulator", "qorch"};
  app.require_subcommand(1);
  CommonOptions o;
  std::uint64_t seed = 0;

  auto common = [&](CLI::App* sub, bool with_policy) {
    sub->add_option("--config", o.config, "top-level JSON config");
    sub->add_option("--seed", seed, "root seed, overrides the config");
    sub->add_option("--model", o.model, "trained model JSON; skips oracle training");
    if (with_policy) {
      sub->add_option("--policy", o.policy, "pareto | fcfs");
      sub->add_option("--preference", o.preference, "fidelity | jct | balanced | p1,p2");
    }
  };

  int count = 0;
  std::string out_path, data_path, circuit_path, transpiled_dir, batch_path, capture_path, spec_path;
  bool timings = false;
  int jobs = 1;

  auto* gen = app.add_subcommand("gen-workload", "emit a job batch JSON");
  common(gen, false);
  gen->add_option("--count", count, "number of jobs (default: arrivals within the configured duration)");
  gen->add_option("--out", out_path, "output file (default stdout)");

  auto* train = app.add_subcommand("train-model", "fit the execution-time regression");
  common(train, false);
  train->add_option("--data", data_path, "CSV dataset width,shots,depth,two_qubit_count,seconds");
  train->add_option("--out", out_path, "output directory for model.json and kfold.json");

  auto* est = app.add_subcommand("estimate", "emit resource plans for a circuit");
  common(est, false);
  est->add_option("--circuit", circuit_path, "circuit JSON")->required();
  est->add_option("--out", out_path, "output file (default stdout)");
  est->add_option("--transpiled", transpiled_dir, "also write the transpiled circuit per template here");

  auto* sched = app.add_subcommand("schedule", "schedule one job batch");
  common(sched, true);
  sched->add_option("--batch", batch_path, "job batch JSON")->required();
  sched->add_option("--out", out_path, "output file (default stdout)");

  auto* sim = app.add_subcommand("simulate", "run one simulation and write its CSVs");
  common(sim, true);
  sim->add_option("--out", out_path, "output directory")->required();
  sim->add_flag("--timings", timings, "also write scheduler wall times (not deterministic)");
  sim->add_option("--capture-batch", capture_path, "write the first scheduling cycle's batch JSON here");

  auto* exp = app.add_subcommand("experiment", "run a parameter sweep");
  common(exp, true);
  exp->add_option("--spec", spec_path, "experiment spec JSON")->required();
  exp->add_option("--out", out_path, "output directory")->required();
  exp->add_option("--jobs", jobs, "parallel simulations")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  for (auto* sub : app.get_subcommands())
    if (sub->count("--seed")) o.seed = seed;

  try {
    if (gen->parsed()) return cmd_gen_workload(o, count, out_path, out);
    if (train->parsed()) return cmd_train_model(o, data_path, out_path, out);
    if (est->parsed()) return cmd_estimate(o, circuit_path, out_path, transpiled_dir, out);
    if (sched->parsed()) return cmd_schedule(o, batch_path, out_path, out);
    if (sim->parsed()) return cmd_simulate(o, out_path, timings, capture_path, out);
    if (exp->parsed()) return cmd_experiment(o, spec_path, out_path, jobs, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace qorch::cli
