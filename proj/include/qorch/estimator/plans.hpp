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
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "qorch/circuit.hpp"
#include "qorch/cutting.hpp"
#include "qorch/error.hpp"
#include "qorch/estimator/fidelity.hpp"
#include "qorch/estimator/regression.hpp"
#include "qorch/qpu.hpp"
#include "qorch/transpiler.hpp"

namespace qorch {

enum class AcceleratorKind { CPU, GPU, TPU, FPGA };

inline const char* to_string(AcceleratorKind k) {
  switch (k) {
    case AcceleratorKind::CPU: return "CPU";
    case AcceleratorKind::GPU: return "GPU";
    case AcceleratorKind::TPU: return "TPU";
    case AcceleratorKind::FPGA: return "FPGA";
  }
  return "?";
}

struct Accelerator {
  std::string id;
  AcceleratorKind kind = AcceleratorKind::CPU;
  double speed = 1e10;  // FLOP/s
};

inline constexpr double kDefaultKnitConstant = 1e6;

// Knitting cost grows as base^k per fragment.
inline double knitting_flops(int k, int fragments, double base = 6.0,
                             double knit_constant = kDefaultKnitConstant) {
  detail::require(k >= 0, "knitting_flops: k must be >= 0");
  detail::require(base >= 6.0 && base <= 8.0, "knitting_flops: base must lie in [6, 8]");
  detail::require(fragments >= 1, "knitting_flops: fragments must be >= 1");
  return knit_constant * std::pow(base, k) * fragments;
}

inline double classical_time(double flops, const Accelerator& acc) {
  detail::require(flops >= 0.0, "classical_time: flops must be >= 0");
  detail::require(acc.speed > 0.0, "classical_time: accelerator speed must be > 0");
  return flops / acc.speed;
}

struct EstimatorContext {
  RegressionModel model;
  double overhead_base = 6.0;
  double knit_constant = kDefaultKnitConstant;
  bool parallel_fragments = false;  // fragments run sequentially by default
};

struct QuantumEstimate {
  double fidelity = 1.0;
  double seconds = 0.0;
};

// Estimates for running a set of circuits (one, or the fragments of a cut)
// on one coupling map with given calibration.
inline QuantumEstimate estimate_quantum(const std::vector<Circuit>& parts, const CouplingMap& map,
                                        const CalibrationData& cal, const EstimatorContext& ctx,
                                        const std::string& target = {}) {
  detail::require(!parts.empty(), "estimate_quantum: no circuits");
  QuantumEstimate est{1.0, 0.0};
  for (const Circuit& c : parts) {
    const TranspiledCircuit tc = transpile(c, map, target);
    est.fidelity = std::min(est.fidelity, estimate_fidelity(tc, cal));
    const double t = estimate_execution_time(ctx.model, FeatureVector::from(transpiled_metrics(tc)));
    est.seconds = ctx.parallel_fragments ? std::max(est.seconds, t) : est.seconds + t;
  }
  return est;
}

struct ResourcePlan {
  int k = 0;              // requested cut budget, 0 = uncut
  int achieved_cuts = 0;
  int fragments = 1;
  std::string target_model;
  std::optional<std::string> accelerator;
  double est_fidelity = 0;
  double est_quantum_time = 0;
  double est_classical_time = 0;
  double est_total_time = 0;
};

// a dominates b: fidelity no lower and total time no higher, one strictly.
inline bool dominates(const ResourcePlan& a, const ResourcePlan& b) {
  return a.est_fidelity >= b.est_fidelity && a.est_total_time <= b.est_total_time &&
         (a.est_fidelity > b.est_fidelity || a.est_total_time < b.est_total_time);
}

inline std::vector<ResourcePlan> pareto_plans(std::vector<ResourcePlan> plans) {
  std::vector<ResourcePlan> front;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < plans.size() && !dominated; ++j) dominated = j != i && dominates(plans[j], plans[i]);
    if (dominated) continue;
    const bool duplicate = std::any_of(front.begin(), front.end(), [&](const ResourcePlan& p) {
      return p.est_fidelity == plans[i].est_fidelity && p.est_total_time == plans[i].est_total_time;
    });
    if (!duplicate) front.push_back(plans[i]);
  }
  std::sort(front.begin(), front.end(), [](const ResourcePlan& a, const ResourcePlan& b) {
    return std::tie(a.est_total_time, a.est_fidelity) < std::tie(b.est_total_time, b.est_fidelity);
  });
  return front;
}

// Picks `count` plans from a sorted front: both endpoints, then repeatedly the
// point that best splits the widest remaining gap (normalized plane).
inline std::vector<ResourcePlan> spread_plans(const std::vector<ResourcePlan>& front, int count) {
  if (static_cast<int>(front.size()) <= count) return front;
  if (count == 1) return {front.back()};
  const double t_lo = front.front().est_total_time;
  const double t_span = std::max(front.back().est_total_time - t_lo, 1e-300);
  const double f_lo = front.front().est_fidelity;
  const double f_span = std::max(front.back().est_fidelity - f_lo, 1e-300);
  auto dist = [&](std::size_t i, std::size_t j) {
    const double dt = (front[i].est_total_time - front[j].est_total_time) / t_span;
    const double df = (front[i].est_fidelity - front[j].est_fidelity) / f_span;
    return std::hypot(dt, df);
  };
  std::vector<std::size_t> chosen{0, front.size() - 1};
  while (static_cast<int>(chosen.size()) < count) {
    double best_score = -1;
    std::size_t best_idx = 0;
    for (std::size_t g = 0; g + 1 < chosen.size(); ++g) {
      const std::size_t lo = chosen[g];
      const std::size_t hi = chosen[g + 1];
      for (std::size_t m = lo + 1; m < hi; ++m) {
        // Larger gaps first; within a gap prefer the most even split.
        const double score = dist(lo, hi) - std::max(dist(lo, m), dist(m, hi)) + dist(lo, hi) * 1e3;
        if (score > best_score) {
          best_score = score;
          best_idx = m;
        }
      }
    }
    if (best_score < 0) break;
    chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), best_idx), best_idx);
  }
  std::vector<ResourcePlan> out;
  for (std::size_t i : chosen) out.push_back(front[i]);
  return out;
}

// Enumerates {uncut} + k_set cuts x templates x accelerators, keeps the
// Pareto-optimal plans and spreads `plan_count` of them across the front.
// Uncut plans carry no knitting and therefore no accelerator.
inline std::vector<ResourcePlan> generate_resource_plans(const Circuit& circuit,
                                                         const std::vector<TemplateQpu>& templates,
                                                         const std::vector<Accelerator>& accelerators,
                                                         const std::vector<int>& k_set, int plan_count,
                                                         const EstimatorContext& ctx) {
  detail::require(!templates.empty(), "generate_resource_plans: no template QPUs");
  detail::require(plan_count >= 1, "generate_resource_plans: plan_count must be >= 1");

  std::optional<Bisection> bisection;
  if (circuit.width >= 2 && !k_set.empty()) bisection = bisect_qubits(circuit);

  std::vector<ResourcePlan> all;
  for (const TemplateQpu& t : templates) {
    if (circuit.width <= t.coupling.size()) {
      const auto q = estimate_quantum({circuit}, t.coupling, t.calibration, ctx, t.model);
      all.push_back({0, 0, 1, t.model, std::nullopt, q.fidelity, q.seconds, 0.0, q.seconds});
    }
    if (!bisection) continue;
    std::vector<int> ks = k_set;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (int k : ks) {
      if (k < 1 || bisection->crossings > k) continue;
      const CutSolution cut = apply_cut(circuit, *bisection, k);
      const bool fits = std::all_of(cut.fragments.begin(), cut.fragments.end(),
                                    [&](const Circuit& f) { return f.width <= t.coupling.size(); });
      if (!fits) continue;
      const auto q = estimate_quantum(cut.fragments, t.coupling, t.calibration, ctx, t.model);
      const double flops = knitting_flops(cut.achieved_cuts, static_cast<int>(cut.fragments.size()),
                                          ctx.overhead_base, ctx.knit_constant);
      for (const Accelerator& acc : accelerators) {
        const double ct = classical_time(flops, acc);
        all.push_back({k, cut.achieved_cuts, static_cast<int>(cut.fragments.size()), t.model, acc.id,
                       q.fidelity, q.seconds, ct, q.seconds + ct});
      }
      // Larger budgets reuse the same bisection, so they add nothing new.
      break;
    }
  }
  if (all.empty()) throw NoFeasiblePlan("generate_resource_plans: circuit fits no template, cut or uncut");
  return spread_plans(pareto_plans(std::move(all)), plan_count);
}

}  // namespace qorch
