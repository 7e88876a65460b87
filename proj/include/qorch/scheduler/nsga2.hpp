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
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <tuple>
#include <vector>

#include "qorch/error.hpp"
#include "qorch/rng.hpp"
#include "qorch/scheduler/job.hpp"
#include "qorch/scheduler/objectives.hpp"

namespace qorch {

// Fast non-dominated sorting. Returns fronts of point indices; front 0 is the
// non-dominated set.
inline std::vector<std::vector<int>> non_dominated_sort(std::span<const ObjectivePoint> pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<int>> dominated_by(n);
  std::vector<int> count(n, 0);
  std::vector<std::vector<int>> fronts(1);
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (dominates(pts[p], pts[q])) {
        dominated_by[p].push_back(q);
        ++count[q];
      } else if (dominates(pts[q], pts[p])) {
        dominated_by[q].push_back(p);
        ++count[p];
      }
    }
  }
  for (int p = 0; p < n; ++p)
    if (count[p] == 0) fronts[0].push_back(p);
  for (std::size_t f = 0; !fronts[f].empty(); ++f) {
    std::vector<int> next;
    for (int p : fronts[f])
      for (int q : dominated_by[p])
        if (--count[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
  }
  fronts.pop_back();
  return fronts;
}

// Crowding distance of each point within one front. Boundary points get
// +inf; a zero-range objective contributes nothing.
inline std::vector<double> crowding_distance(std::span<const ObjectivePoint> front) {
  const std::size_t n = front.size();
  std::vector<double> d(n, 0.0);
  if (n <= 2) {
    std::fill(d.begin(), d.end(), std::numeric_limits<double>::infinity());
    return d;
  }
  std::vector<std::size_t> order(n);
  for (auto field : {&ObjectivePoint::f1, &ObjectivePoint::f2}) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return front[a].*field < front[b].*field; });
    const double lo = front[order.front()].*field;
    const double hi = front[order.back()].*field;
    d[order.front()] = d[order.back()] = std::numeric_limits<double>::infinity();
    if (hi - lo <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i)
      d[order[i]] += (front[order[i + 1]].*field - front[order[i - 1]].*field) / (hi - lo);
  }
  return d;
}

struct NsgaParams {
  int population = 100;
  int max_generations = 200;
  int max_evaluations = 20000;
  int window = 10;
  double ftol = 1e-4;
  double crossover_prob = 0.9;
  double crossover_eta = 3.0;
  double mutation_eta = 5.0;
  double mutation_rate = -1.0;  // < 0 means 1 / N
  std::uint64_t seed = 1;

  void validate() const {
    detail::require(population >= 4 && population % 2 == 0, "nsga: population must be even and >= 4");
    detail::require(window >= 2, "nsga: window must be >= 2");
    detail::require(max_generations >= 1 && max_evaluations >= population,
                    "nsga: generation/evaluation limits too small");
    detail::require(crossover_eta >= 0 && mutation_eta >= 0, "nsga: distribution indices must be >= 0");
  }
};

struct FrontEntry {
  Assignment assignment;
  ObjectivePoint point;
};

struct ParetoFront {
  std::vector<FrontEntry> entries;
  int generations = 0;
  int evaluations = 0;
};

namespace detail {

struct Individual {
  std::vector<int> genes;  // index into the job's feasible list
  ObjectivePoint point;
  int rank = 0;
  double crowding = 0;
};

// Bounded simulated binary crossover on one real-valued gene pair.
inline void sbx_pair(double& x1, double& x2, double lo, double hi, double eta, Rng& rng) {
  if (std::abs(x1 - x2) < 1e-14) return;
  const double y1 = std::min(x1, x2);
  const double y2 = std::max(x1, x2);
  const double u = uniform01(rng);
  auto child = [&](double beta_bound_base) {
    const double alpha = 2.0 - std::pow(beta_bound_base, -(eta + 1.0));
    const double betaq = u <= 1.0 / alpha ? std::pow(u * alpha, 1.0 / (eta + 1.0))
                                          : std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
    return betaq;
  };
  const double b1 = child(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
  const double b2 = child(1.0 + 2.0 * (hi - y2) / (y2 - y1));
  double c1 = std::clamp(0.5 * ((y1 + y2) - b1 * (y2 - y1)), lo, hi);
  double c2 = std::clamp(0.5 * ((y1 + y2) + b2 * (y2 - y1)), lo, hi);
  if (uniform01(rng) < 0.5) std::swap(c1, c2);
  x1 = c1;
  x2 = c2;
}

// Bounded polynomial mutation of one gene.
inline double polynomial_mutation(double x, double lo, double hi, double eta, Rng& rng) {
  const double span = hi - lo;
  if (span <= 0) return x;
  const double d1 = (x - lo) / span;
  const double d2 = (hi - x) / span;
  const double u = uniform01(rng);
  const double p = 1.0 / (eta + 1.0);
  double dq = 0;
  if (u < 0.5) {
    const double v = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
    dq = std::pow(v, p) - 1.0;
  } else {
    const double v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
    dq = 1.0 - std::pow(v, p);
  }
  return std::clamp(x + dq * span, lo, hi);
}

inline int round_gene(double v, int options) {
  return std::clamp(static_cast<int>(std::lround(v)), 0, options - 1);
}

// Mean relative change of the front's bounding box between two generations.
inline double box_change(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  double s = 0;
  for (int i = 0; i < 4; ++i) s += std::abs(b[i] - a[i]) / std::max(std::abs(a[i]), 1e-12);
  return s / 4.0;
}

}  // namespace detail

// NSGA-II over integer assignment vectors. Each gene ranges over its job's
// feasible QPUs only, so every schedule it produces is feasible.
inline ParetoFront nsga2_optimize(const std::vector<Job>& jobs, std::span<const double> queue_wait,
                                  const NsgaParams& params) {
  params.validate();
  detail::require(!jobs.empty(), "nsga2_optimize: no jobs");
  for (const Job& j : jobs) {
    if (j.feasible.empty())
      throw ConstraintError("nsga2_optimize: job " + std::to_string(j.id) +
                            " has no feasible QPU; it should have been rejected in preprocessing");
    detail::require(j.per_qpu.size() == queue_wait.size(), "nsga2_optimize: queue_wait size mismatch");
  }
  using detail::Individual;
  const std::size_t n = jobs.size();
  const int pop = params.population;
  const double mut_rate = params.mutation_rate < 0 ? 1.0 / static_cast<double>(n) : params.mutation_rate;
  Rng rng(params.seed);

  std::vector<double> load;
  Assignment x(n);
  int evaluations = 0;
  auto evaluate = [&](Individual& ind) {
    for (std::size_t i = 0; i < n; ++i) x[i] = jobs[i].feasible[ind.genes[i]];
    ind.point = evaluate_unchecked(x, jobs, queue_wait, load);
    ++evaluations;
  };

  std::vector<Individual> population(pop);
  for (Individual& ind : population) {
    ind.genes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int options = static_cast<int>(jobs[i].feasible.size());
      ind.genes[i] = std::uniform_int_distribution<int>(0, options - 1)(rng);
    }
    evaluate(ind);
  }

  // Sorts `all` into rank/crowding order and keeps the best `keep`.
  auto survive = [&](std::vector<Individual>& all, std::size_t keep) {
    std::vector<ObjectivePoint> pts(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) pts[i] = all[i].point;
    const auto fronts = non_dominated_sort(pts);
    std::vector<Individual> next;
    next.reserve(keep);
    for (std::size_t r = 0; r < fronts.size() && next.size() < keep; ++r) {
      std::vector<ObjectivePoint> fp;
      for (int idx : fronts[r]) fp.push_back(pts[idx]);
      const auto cd = crowding_distance(fp);
      std::vector<std::size_t> order(fronts[r].size());
      std::iota(order.begin(), order.end(), 0);
      if (next.size() + order.size() > keep)
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
      for (std::size_t o : order) {
        if (next.size() == keep) break;
        Individual ind = std::move(all[fronts[r][o]]);
        ind.rank = static_cast<int>(r);
        ind.crowding = cd[o];
        next.push_back(std::move(ind));
      }
    }
    all = std::move(next);
  };
  survive(population, pop);

  auto bounding_box = [&](const std::vector<Individual>& p) {
    std::array<double, 4> box{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                              -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Individual& ind : p) {
      if (ind.rank != 0) continue;
      box[0] = std::min(box[0], ind.point.f1);
      box[1] = std::min(box[1], ind.point.f2);
      box[2] = std::max(box[2], ind.point.f1);
      box[3] = std::max(box[3], ind.point.f2);
    }
    return box;
  };

  auto tournament = [&]() -> const Individual& {
    const Individual& a = population[std::uniform_int_distribution<int>(0, pop - 1)(rng)];
    const Individual& b = population[std::uniform_int_distribution<int>(0, pop - 1)(rng)];
    if (a.rank != b.rank) return a.rank < b.rank ? a : b;
    if (a.crowding != b.crowding) return a.crowding > b.crowding ? a : b;
    return uniform01(rng) < 0.5 ? a : b;
  };

  std::vector<double> changes;
  auto box = bounding_box(population);
  int generation = 0;
  while (generation < params.max_generations && evaluations + pop <= params.max_evaluations) {
    ++generation;
    std::vector<Individual> offspring;
    offspring.reserve(pop);
    while (static_cast<int>(offspring.size()) < pop) {
      Individual c1 = tournament();
      Individual c2 = tournament();
      const bool cross = uniform01(rng) < params.crossover_prob;
      for (std::size_t i = 0; i < n; ++i) {
        const int options = static_cast<int>(jobs[i].feasible.size());
        if (options == 1) continue;
        const double lo = -0.49;
        const double hi = options - 0.51;
        double g1 = c1.genes[i];
        double g2 = c2.genes[i];
        if (cross && uniform01(rng) < 0.5) detail::sbx_pair(g1, g2, lo, hi, params.crossover_eta, rng);
        if (uniform01(rng) < mut_rate) g1 = detail::polynomial_mutation(g1, lo, hi, params.mutation_eta, rng);
        if (uniform01(rng) < mut_rate) g2 = detail::polynomial_mutation(g2, lo, hi, params.mutation_eta, rng);
        c1.genes[i] = detail::round_gene(g1, options);
        c2.genes[i] = detail::round_gene(g2, options);
      }
      evaluate(c1);
      evaluate(c2);
      offspring.push_back(std::move(c1));
      offspring.push_back(std::move(c2));
    }
    for (Individual& ind : offspring) population.push_back(std::move(ind));
    survive(population, pop);

    const auto next_box = bounding_box(population);
    changes.push_back(detail::box_change(box, next_box));
    box = next_box;
    if (static_cast<int>(changes.size()) >= params.window) {
      const double mean =
          std::accumulate(changes.end() - params.window, changes.end(), 0.0) / params.window;
      if (mean < params.ftol) break;
    }
  }

  // First front, one entry per distinct objective point (smallest assignment
  // wins), ordered by f1.
  ParetoFront out;
  out.generations = generation;
  out.evaluations = evaluations;
  for (const Individual& ind : population) {
    if (ind.rank != 0) continue;
    Assignment a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = jobs[i].feasible[ind.genes[i]];
    auto same = std::find_if(out.entries.begin(), out.entries.end(),
                             [&](const FrontEntry& e) { return e.point == ind.point; });
    if (same == out.entries.end()) {
      out.entries.push_back({std::move(a), ind.point});
    } else if (a < same->assignment) {
      same->assignment = std::move(a);
    }
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const FrontEntry& a, const FrontEntry& b) {
    return std::tie(a.point.f1, a.point.f2) < std::tie(b.point.f1, b.point.f2);
  });
  return out;
}

}  // namespace qorch
