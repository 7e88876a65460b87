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

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qorch/circuit.hpp"
#include "qorch/cloudsim/config.hpp"
#include "qorch/cloudsim/simulation.hpp"
#include "qorch/error.hpp"
#include "qorch/estimator/plans.hpp"
#include "qorch/estimator/regression.hpp"
#include "qorch/scheduler/mcdm.hpp"
#include "qorch/scheduler/nsga2.hpp"
#include "qorch/transpiler.hpp"

namespace qorch::io {

using nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

inline void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

namespace detail {

// Walks one JSON object, remembering which keys were read so that leftovers
// can be reported as typos.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  template <typename T>
  void get(const std::string& key, T& out) {
    if (!j_.contains(key)) return;
    seen_.insert(key);
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(name(key) + " has the wrong type");
    }
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError("unknown key '" + name(k) + "'");
  }

 private:
  std::string where() const { return path_.empty() ? "document" : "'" + path_ + "'"; }
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline ErrorRange parse_range(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(name + " must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

// ---- circuits -------------------------------------------------------------

inline GateKind parse_gate_kind(const std::string& s) {
  if (s == "1q") return GateKind::OneQubit;
  if (s == "2q") return GateKind::TwoQubit;
  if (s == "measure") return GateKind::Measure;
  throw ConfigError("unknown gate kind '" + s + "'");
}

inline json to_json(const Circuit& c) {
  json gates = json::array();
  for (const Gate& g : c.gates) {
    json q = json::array({g.qubits[0]});
    if (g.kind == GateKind::TwoQubit) q.push_back(g.qubits[1]);
    gates.push_back({{"kind", to_string(g.kind)}, {"qubits", q}});
  }
  return {{"width", c.width}, {"shots", c.shots}, {"gates", gates}};
}

inline Circuit circuit_from_json(const json& j, const std::string& path = "circuit") {
  detail::Fields f(j, path);
  Circuit c;
  f.get("width", c.width);
  f.get("shots", c.shots);
  if (!f.has("width") || !f.has("gates")) throw ConfigError(path + " needs width and gates");
  const json& gates = f.raw("gates");
  if (!gates.is_array()) throw ConfigError(path + ".gates must be an array");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    detail::Fields g(gates[i], path + ".gates[" + std::to_string(i) + "]");
    std::string kind;
    std::vector<int> qubits;
    g.get("kind", kind);
    g.get("qubits", qubits);
    g.finish();
    const GateKind k = parse_gate_kind(kind);
    if (static_cast<int>(qubits.size()) != arity(k))
      throw ConfigError(path + ".gates[" + std::to_string(i) + "] has the wrong number of qubits");
    c.gates.push_back(k == GateKind::TwoQubit ? Gate::two(qubits[0], qubits[1])
                                              : (k == GateKind::Measure ? Gate::measure(qubits[0])
                                                                        : Gate::one(qubits[0])));
  }
  f.finish();
  try {
    c.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return c;
}

// ---- config ---------------------------------------------------------------

inline AcceleratorKind parse_accelerator_kind(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "cpu") return AcceleratorKind::CPU;
  if (s == "gpu") return AcceleratorKind::GPU;
  if (s == "tpu") return AcceleratorKind::TPU;
  if (s == "fpga") return AcceleratorKind::FPGA;
  throw ConfigError("unknown accelerator kind '" + s + "' (expected cpu, gpu, tpu or fpga)");
}

inline Policy parse_policy(const std::string& s) {
  if (s == "pareto") return Policy::Pareto;
  if (s == "fcfs") return Policy::FCFS;
  throw ConfigError("unknown policy '" + s + "' (expected pareto or fcfs)");
}

inline Interaction parse_interaction(const std::string& s) {
  if (s == "random") return Interaction::Random;
  if (s == "linear") return Interaction::Linear;
  throw ConfigError("unknown interaction '" + s + "' (expected random or linear)");
}

inline const char* to_string(Interaction i) { return i == Interaction::Random ? "random" : "linear"; }

inline std::string preference_string(const Preference& p) {
  std::ostringstream s;
  s.precision(17);
  s << p.p1 << "," << p.p2;
  return s.str();
}

inline void parse_cluster(const json& j, ClusterConfig& c) {
  detail::Fields f(j, "cluster");
  if (f.has("qpus")) {
    const json& qs = f.raw("qpus");
    if (!qs.is_array()) throw ConfigError("cluster.qpus must be an array");
    c.spec.qpus.clear();
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const std::string path = "cluster.qpus[" + std::to_string(i) + "]";
      detail::Fields q(qs[i], path);
      QpuSpec s;
      q.get("id", s.id);
      q.get("model", s.model);
      q.get("count", s.count);
      q.get("size", s.size);
      q.get("topology", s.topology);
      if (q.has("edges")) {
        std::vector<std::array<int, 2>> edges;
        q.get("edges", edges);
        for (const auto& e : edges) s.edges.push_back({e[0], e[1]});
      }
      if (q.has("single_qubit_error")) s.single_qubit_error = detail::parse_range(q.raw("single_qubit_error"), q.name("single_qubit_error"));
      if (q.has("two_qubit_error")) s.two_qubit_error = detail::parse_range(q.raw("two_qubit_error"), q.name("two_qubit_error"));
      if (q.has("readout_error")) s.readout_error = detail::parse_range(q.raw("readout_error"), q.name("readout_error"));
      q.finish();
      c.spec.qpus.push_back(s);
    }
  }
  if (f.has("drift")) {
    detail::Fields d(f.raw("drift"), "cluster.drift");
    d.get("sigma", c.spec.drift.sigma);
    d.get("eps_min", c.spec.drift.eps_min);
    d.get("eps_max", c.spec.drift.eps_max);
    d.finish();
  }
  if (f.has("timing")) {
    detail::Fields t(f.raw("timing"), "cluster.timing");
    t.get("t_layer", c.timing.t_layer);
    t.get("t_shot", c.timing.t_shot);
    t.get("t_overhead", c.timing.t_overhead);
    t.get("qpu_jitter", c.timing.qpu_jitter);
    t.get("exec_jitter", c.timing.exec_jitter);
    t.finish();
  }
  if (f.has("classical_nodes")) {
    const json& ns = f.raw("classical_nodes");
    if (!ns.is_array()) throw ConfigError("cluster.classical_nodes must be an array");
    c.classical_nodes.clear();
    for (std::size_t i = 0; i < ns.size(); ++i) {
      detail::Fields n(ns[i], "cluster.classical_nodes[" + std::to_string(i) + "]");
      ClassicalNode node;
      std::string kind = "cpu";
      n.get("id", node.id);
      n.get("kind", kind);
      n.get("count", node.count);
      n.get("speed", node.speed);
      n.finish();
      node.kind = parse_accelerator_kind(kind);
      c.classical_nodes.push_back(node);
    }
  }
  f.finish();
}

inline void parse_workload(const json& j, WorkloadParams& w) {
  detail::Fields f(j, "workload");
  f.get("width_mean", w.width_mean);
  f.get("width_std", w.width_std);
  f.get("width_min", w.width_min);
  f.get("width_max", w.width_max);
  f.get("depth_mean", w.depth_mean);
  f.get("depth_std", w.depth_std);
  f.get("depth_min", w.depth_min);
  f.get("two_qubit_fraction", w.two_qubit_fraction);
  f.get("shots_min", w.shots_min);
  f.get("shots_max", w.shots_max);
  f.get("cut_fraction", w.cut_fraction);
  std::string inter = to_string(w.interaction);
  f.get("interaction", inter);
  w.interaction = parse_interaction(inter);
  f.finish();
}

inline void parse_nsga(const json& j, NsgaParams& p) {
  detail::Fields f(j, "scheduler.nsga");
  f.get("population", p.population);
  f.get("max_generations", p.max_generations);
  f.get("max_evaluations", p.max_evaluations);
  f.get("window", p.window);
  f.get("ftol", p.ftol);
  f.get("crossover_prob", p.crossover_prob);
  f.get("crossover_eta", p.crossover_eta);
  f.get("mutation_eta", p.mutation_eta);
  f.get("mutation_rate", p.mutation_rate);
  f.finish();
}

inline void parse_scheduler(const json& j, SchedulerConfig& s) {
  detail::Fields f(j, "scheduler");
  std::string policy = to_string(s.policy);
  f.get("policy", policy);
  s.policy = parse_policy(policy);
  if (f.has("preference")) {
    const json& p = f.raw("preference");
    if (p.is_string())
      s.preference = parse_preference(p.get<std::string>());
    else if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number())
      s.preference = {p[0].get<double>(), p[1].get<double>()};
    else
      throw ConfigError("scheduler.preference must be a name or [p1, p2]");
  }
  f.get("trigger_queue_limit", s.trigger_queue_limit);
  f.get("trigger_interval", s.trigger_interval);
  if (f.has("nsga")) parse_nsga(f.raw("nsga"), s.nsga);
  f.finish();
}

inline void parse_simulation(const json& j, SimulationConfig& s) {
  detail::Fields f(j, "simulation");
  f.get("duration", s.duration);
  if (f.has("arrival_profile")) {
    const json& a = f.raw("arrival_profile");
    if (a.is_number()) {
      s.arrival_profile = {{0, a.get<double>()}};
    } else if (a.is_array()) {
      s.arrival_profile.clear();
      for (std::size_t i = 0; i < a.size(); ++i) {
        detail::Fields b(a[i], "simulation.arrival_profile[" + std::to_string(i) + "]");
        ArrivalBucket bucket;
        b.get("hour", bucket.hour);
        b.get("rate", bucket.rate);
        b.finish();
        s.arrival_profile.push_back(bucket);
      }
    } else {
      throw ConfigError("simulation.arrival_profile must be a rate or a list of {hour, rate}");
    }
  }
  f.get("sigma_fid", s.sigma_fid);
  f.get("calibration_cycle", s.calibration_cycle);
  f.get("calibration_staleness", s.calibration_staleness);
  f.get("warmup", s.warmup);
  f.get("drain", s.drain);
  f.finish();
}

inline void parse_estimator(const json& j, EstimatorConfig& e) {
  detail::Fields f(j, "estimator");
  f.get("degree", e.degree);
  f.get("k_set", e.k_set);
  f.get("plan_count", e.plan_count);
  f.get("overhead_base", e.overhead_base);
  f.get("knit_constant", e.knit_constant);
  f.get("parallel_fragments", e.parallel_fragments);
  if (f.has("accelerators")) {
    const json& as = f.raw("accelerators");
    if (!as.is_array()) throw ConfigError("estimator.accelerators must be an array");
    e.accelerators.clear();
    for (std::size_t i = 0; i < as.size(); ++i) {
      detail::Fields a(as[i], "estimator.accelerators[" + std::to_string(i) + "]");
      Accelerator acc;
      std::string kind = "cpu";
      a.get("id", acc.id);
      a.get("kind", kind);
      a.get("speed", acc.speed);
      a.finish();
      acc.kind = parse_accelerator_kind(kind);
      e.accelerators.push_back(acc);
    }
  }
  f.get("training_samples", e.training_samples);
  f.get("training_noise", e.training_noise);
  f.get("kfolds", e.kfolds);
  f.get("model_path", e.model_path);
  f.finish();
}

// Fields absent from the document keep their defaults; unknown keys fail.
inline Config config_from_json(const json& j) {
  Config c;
  detail::Fields f(j, "");
  f.get("seed", c.seed);
  if (f.has("cluster")) parse_cluster(f.raw("cluster"), c.cluster);
  if (f.has("workload")) parse_workload(f.raw("workload"), c.workload);
  if (f.has("scheduler")) parse_scheduler(f.raw("scheduler"), c.scheduler);
  if (f.has("simulation")) parse_simulation(f.raw("simulation"), c.simulation);
  if (f.has("estimator")) parse_estimator(f.raw("estimator"), c.estimator);
  f.finish();
  c.validate();
  return c;
}

inline Config load_config(const std::string& path) {
  try {
    return config_from_json(read_json_file(path));
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.find(path) != std::string::npos) throw;
    throw ConfigError(path + ": " + msg);
  }
}

inline json to_json(const Config& c) {
  json qpus = json::array();
  for (const QpuSpec& q : c.cluster.spec.qpus) {
    json e = {{"id", q.id},
              {"model", q.model},
              {"count", q.count},
              {"size", q.size},
              {"topology", q.topology},
              {"single_qubit_error", {q.single_qubit_error.lo, q.single_qubit_error.hi}},
              {"two_qubit_error", {q.two_qubit_error.lo, q.two_qubit_error.hi}},
              {"readout_error", {q.readout_error.lo, q.readout_error.hi}}};
    if (!q.edges.empty()) {
      json edges = json::array();
      for (const auto& [a, b] : q.edges) edges.push_back({a, b});
      e["edges"] = edges;
    }
    qpus.push_back(e);
  }
  json nodes = json::array();
  for (const auto& n : c.cluster.classical_nodes)
    nodes.push_back({{"id", n.id}, {"kind", to_string(n.kind)}, {"count", n.count}, {"speed", n.speed}});
  json accs = json::array();
  for (const auto& a : c.estimator.accelerators)
    accs.push_back({{"id", a.id}, {"kind", to_string(a.kind)}, {"speed", a.speed}});
  json profile = json::array();
  for (const auto& b : c.simulation.arrival_profile) profile.push_back({{"hour", b.hour}, {"rate", b.rate}});
  const auto& t = c.cluster.timing;
  const auto& w = c.workload;
  const auto& s = c.scheduler;
  const auto& n = s.nsga;
  const auto& sim = c.simulation;
  const auto& e = c.estimator;
  return {
      {"seed", c.seed},
      {"cluster",
       {{"qpus", qpus},
        {"drift", {{"sigma", c.cluster.spec.drift.sigma}, {"eps_min", c.cluster.spec.drift.eps_min}, {"eps_max", c.cluster.spec.drift.eps_max}}},
        {"timing", {{"t_layer", t.t_layer}, {"t_shot", t.t_shot}, {"t_overhead", t.t_overhead}, {"qpu_jitter", t.qpu_jitter}, {"exec_jitter", t.exec_jitter}}},
        {"classical_nodes", nodes}}},
      {"workload",
       {{"width_mean", w.width_mean}, {"width_std", w.width_std}, {"width_min", w.width_min}, {"width_max", w.width_max},
        {"depth_mean", w.depth_mean}, {"depth_std", w.depth_std}, {"depth_min", w.depth_min},
        {"two_qubit_fraction", w.two_qubit_fraction}, {"shots_min", w.shots_min}, {"shots_max", w.shots_max},
        {"cut_fraction", w.cut_fraction}, {"interaction", to_string(w.interaction)}}},
      {"scheduler",
       {{"policy", to_string(s.policy)},
        {"preference", {s.preference.p1, s.preference.p2}},
        {"trigger_queue_limit", s.trigger_queue_limit},
        {"trigger_interval", s.trigger_interval},
        {"nsga",
         {{"population", n.population}, {"max_generations", n.max_generations}, {"max_evaluations", n.max_evaluations},
          {"window", n.window}, {"ftol", n.ftol}, {"crossover_prob", n.crossover_prob},
          {"crossover_eta", n.crossover_eta}, {"mutation_eta", n.mutation_eta}, {"mutation_rate", n.mutation_rate}}}}},
      {"simulation",
       {{"duration", sim.duration}, {"arrival_profile", profile}, {"sigma_fid", sim.sigma_fid},
        {"calibration_cycle", sim.calibration_cycle}, {"calibration_staleness", sim.calibration_staleness},
        {"warmup", sim.warmup}, {"drain", sim.drain}}},
      {"estimator",
       {{"degree", e.degree}, {"k_set", e.k_set}, {"plan_count", e.plan_count}, {"overhead_base", e.overhead_base},
        {"knit_constant", e.knit_constant}, {"parallel_fragments", e.parallel_fragments}, {"accelerators", accs},
        {"training_samples", e.training_samples}, {"training_noise", e.training_noise}, {"kfolds", e.kfolds},
        {"model_path", e.model_path}}},
  };
}

// ---- job batches ----------------------------------------------------------

inline json to_json(const RawJob& j) {
  return {{"id", j.id}, {"arrival", j.arrival_time}, {"cut_k", j.cut_k}, {"knit_kind", to_string(j.knit_kind)},
          {"circuit", to_json(j.circuit)}};
}

inline json batch_to_json(const std::vector<RawJob>& jobs, int cycle = 0, double time = 0,
                          const std::vector<double>& queue_wait = {}) {
  json arr = json::array();
  for (const RawJob& j : jobs) arr.push_back(to_json(j));
  json out = {{"cycle", cycle}, {"time", time}, {"jobs", arr}};
  if (!queue_wait.empty()) out["queue_wait"] = queue_wait;
  return out;
}

inline json batch_to_json(const BatchCapture& b) { return batch_to_json(b.jobs, b.cycle, b.time, b.queue_wait); }

inline BatchCapture batch_from_json(const json& j) {
  detail::Fields f(j, "batch");
  BatchCapture b;
  f.get("cycle", b.cycle);
  f.get("time", b.time);
  f.get("queue_wait", b.queue_wait);
  if (!f.has("jobs")) throw ConfigError("batch needs a jobs array");
  const json& jobs = f.raw("jobs");
  if (!jobs.is_array()) throw ConfigError("batch.jobs must be an array");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string path = "batch.jobs[" + std::to_string(i) + "]";
    detail::Fields jf(jobs[i], path);
    RawJob r;
    r.id = static_cast<JobId>(i);
    std::string kind = to_string(r.knit_kind);
    jf.get("id", r.id);
    jf.get("arrival", r.arrival_time);
    jf.get("cut_k", r.cut_k);
    jf.get("knit_kind", kind);
    if (!jf.has("circuit")) throw ConfigError(path + " needs a circuit");
    r.circuit = circuit_from_json(jf.raw("circuit"), path + ".circuit");
    jf.finish();
    r.knit_kind = parse_accelerator_kind(kind);
    b.jobs.push_back(std::move(r));
  }
  f.finish();
  return b;
}

// ---- regression model -----------------------------------------------------

inline json to_json(const RegressionModel& m) {
  json terms = json::array();
  for (const auto& t : m.terms) terms.push_back(t);
  return {{"degree", m.degree},
          {"features", {"width", "shots", "depth", "two_qubit_count"}},
          {"terms", terms},
          {"coefficients", m.coefficients},
          {"normalization", {{"mean", m.feature_means}, {"scale", m.feature_scales}}},
          {"train_r2", m.train_r2}};
}

inline RegressionModel model_from_json(const json& j) {
  detail::Fields f(j, "model");
  RegressionModel m;
  std::vector<std::string> features;
  f.get("degree", m.degree);
  f.get("features", features);
  f.get("coefficients", m.coefficients);
  f.get("train_r2", m.train_r2);
  if (f.has("terms")) {
    std::vector<Exponents> terms;
    f.get("terms", terms);
    m.terms = terms;
  } else {
    m.terms = polynomial_terms(m.degree);
  }
  if (f.has("normalization")) {
    detail::Fields n(f.raw("normalization"), "model.normalization");
    n.get("mean", m.feature_means);
    n.get("scale", m.feature_scales);
    n.finish();
  }
  f.finish();
  if (m.degree < 1 || m.terms != polynomial_terms(m.degree))
    throw ConfigError("model terms do not match degree " + std::to_string(m.degree));
  if (m.coefficients.size() != m.terms.size())
    throw ConfigError("model has " + std::to_string(m.coefficients.size()) + " coefficients, expected " +
                      std::to_string(m.terms.size()));
  for (double s : m.feature_scales)
    if (!(s > 0)) throw ConfigError("model normalization scales must be > 0");
  return m;
}

inline json to_json(const KFoldReport& r, int degree, std::size_t samples) {
  return {{"degree", degree}, {"samples", samples}, {"folds", r.fold_r2.size()}, {"fold_r2", r.fold_r2},
          {"mean_r2", r.mean_r2}};
}

// ---- estimator output -----------------------------------------------------

inline json to_json(const ResourcePlan& p) {
  return {{"k", p.k},
          {"achieved_cuts", p.achieved_cuts},
          {"fragments", p.fragments},
          {"target_model", p.target_model},
          {"accelerator", p.accelerator ? json(*p.accelerator) : json(nullptr)},
          {"est_fidelity", p.est_fidelity},
          {"est_quantum_time", p.est_quantum_time},
          {"est_classical_time", p.est_classical_time},
          {"est_total_time", p.est_total_time}};
}

inline json to_json(const std::vector<ResourcePlan>& plans) {
  json arr = json::array();
  for (const auto& p : plans) arr.push_back(to_json(p));
  return {{"plans", arr}};
}

inline json to_json(const TranspiledCircuit& tc) {
  json ops = json::array();
  for (const PhysicalOp& op : tc.ops) {
    json q = json::array({op.phys[0]});
    if (op.kind == GateKind::TwoQubit) q.push_back(op.phys[1]);
    ops.push_back({{"kind", to_string(op.kind)}, {"qubits", q}, {"routing", op.routing}});
  }
  const CircuitMetrics m = transpiled_metrics(tc);
  return {{"target", tc.target},
          {"logical_width", tc.logical_width},
          {"shots", tc.shots},
          {"layout", tc.layout},
          {"final_layout", tc.final_layout},
          {"swap_count", tc.swap_count},
          {"depth", m.depth},
          {"two_qubit_count", m.two_qubit_count},
          {"ops", ops}};
}

// ---- scheduler output -----------------------------------------------------

inline json front_to_json(const ParetoFront& front, const std::vector<std::string>& qpu_ids,
                          const std::vector<Job>& jobs, const Preference& pref, std::size_t selected) {
  const auto w = pseudo_weights(front);
  json entries = json::array();
  auto names = [&](const Assignment& a) {
    json out = json::array();
    for (int x : a) out.push_back(qpu_ids.at(x));
    return out;
  };
  for (std::size_t i = 0; i < front.entries.size(); ++i) {
    const auto& e = front.entries[i];
    entries.push_back({{"f1", e.point.f1}, {"f2", e.point.f2}, {"w1", w[i][0]}, {"w2", w[i][1]},
                       {"assignment", names(e.assignment)}});
  }
  json ids = json::array();
  for (const Job& j : jobs) ids.push_back(j.id);
  const auto& sel = front.entries.at(selected);
  return {{"job_ids", ids},
          {"qpus", qpu_ids},
          {"generations", front.generations},
          {"evaluations", front.evaluations},
          {"front", entries},
          {"preference", {pref.p1, pref.p2}},
          {"selected",
           {{"index", selected}, {"f1", sel.point.f1}, {"f2", sel.point.f2}, {"assignment", names(sel.assignment)}}}};
}

}  // namespace qorch::io
