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

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "qorch/cloudsim/oracle.hpp"
#include "qorch/scheduler/baseline.hpp"
#include "qorch/scheduler/job.hpp"
#include "qorch/scheduler/mcdm.hpp"
#include "qorch/scheduler/nsga2.hpp"
#include "qorch/scheduler/objectives.hpp"

using namespace qorch;

namespace {

Job manual_job(JobId id, int qpus, double t, double f) {
  Job j;
  j.id = id;
  j.q = 2;
  j.per_qpu.assign(qpus, QpuEstimate{t, f});
  for (int x = 0; x < qpus; ++x) j.feasible.push_back(x);
  return j;
}

NsgaParams params(std::uint64_t seed) {
  NsgaParams p;
  p.seed = seed;
  return p;
}

std::vector<ObjectivePoint> points_of(const ParetoFront& f) {
  std::vector<ObjectivePoint> p;
  for (const auto& e : f.entries) p.push_back(e.point);
  return p;
}

EstimatorContext small_context() {
  QpuSpec s;
  s.count = 2;
  WorkloadParams w;
  w.width_max = 27;
  const auto data = sample_training_set(w, make_templates(build_cluster({{s}, {}}, 1)), TimingModel{}, 500, 0.01, 1);
  return {fit_regression(data, 2), 6.0, kDefaultKnitConstant, false};
}

std::vector<QpuState> cluster(int n, std::uint64_t seed) {
  QpuSpec s;
  s.count = n;
  return build_cluster({{s}, {}}, seed);
}

double gini(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double num = 0, sum = 0;
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += (2.0 * (i + 1) - n - 1) * v[i];
    sum += v[i];
  }
  return sum > 0 ? num / (n * sum) : 0;
}

}  // namespace

// ---- pre-processing -----------------------------------------------------------

TEST(Preprocess, TooWideJobRejected) {
  const auto qpus = cluster(8, 1);
  const auto ctx = small_context();
  RawJob raw{7, generate_random_circuit(1, 30, 5, 0.2, 100), 0.0, 0};
  const auto res = preprocess({raw}, qpus, ctx);
  EXPECT_TRUE(res.jobs.empty());
  ASSERT_EQ(res.rejected.size(), 1u);
  EXPECT_EQ(res.rejected[0].id, 7);
  EXPECT_EQ(res.rejected[0].reason.rfind("CapacityExceeded", 0), 0u);
}

TEST(Preprocess, SmallJobFitsEverywhere) {
  const auto qpus = cluster(8, 1);
  const auto res = preprocess({{1, generate_random_circuit(1, 5, 10, 0.3, 100), 0.0, 0}}, qpus, small_context());
  ASSERT_EQ(res.jobs.size(), 1u);
  EXPECT_EQ(res.jobs[0].feasible.size(), 8u);
  for (int x = 0; x < 8; ++x) EXPECT_TRUE(res.jobs[0].per_qpu[x].has_value());
}

TEST(Preprocess, EstimatesReproducibleDirectly) {
  const auto qpus = cluster(8, 2);
  const auto ctx = small_context();
  std::vector<RawJob> batch;
  for (int i = 0; i < 100; ++i)
    batch.push_back({i, generate_random_circuit(i, 2 + i % 20, 5 + i % 30, 0.3, 100 + i), 0.0, i % 3 ? 0 : 5});
  const auto res = preprocess(batch, qpus, ctx);
  ASSERT_EQ(res.jobs.size(), 100u);
  for (const Job& j : res.jobs) {
    for (int x : j.feasible) {
      double f = 1.0;
      for (const Circuit& part : j.parts) {
        const auto tc = transpile(part, qpus[x].coupling);
        f = std::min(f, oracle::log_space_fidelity(tc, qpus[x].calibration));
      }
      EXPECT_NEAR(j.at(x).f, f, 1e-9);
    }
  }
}

// ---- objectives ---------------------------------------------------------------

TEST(Objectives, SingleJob) {
  const std::vector<Job> jobs{manual_job(0, 1, 5, 0.9)};
  const std::vector<double> w{10};
  const auto p = evaluate_objectives({0}, jobs, w);
  EXPECT_DOUBLE_EQ(p.f1, 15);
  EXPECT_DOUBLE_EQ(p.f2, 0.1);
}

TEST(Objectives, TwoIdenticalJobs) {
  const std::vector<Job> jobs{manual_job(0, 2, 5, 0.8), manual_job(1, 2, 5, 0.8)};
  const std::vector<double> w{0, 0};
  const auto same = evaluate_objectives({0, 0}, jobs, w);
  EXPECT_DOUBLE_EQ(same.f1, 7.5);
  EXPECT_DOUBLE_EQ(same.f2, 0.2);
  EXPECT_DOUBLE_EQ(evaluate_objectives({0, 1}, jobs, w).f1, 5);
}

TEST(Objectives, MatchesHandExpansion) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7, q = 1 + trial % 4;
    const auto jobs = oracle::random_jobs(rng, n, q);
    std::vector<double> w(q);
    for (double& x : w) x = std::uniform_real_distribution<double>(0, 100)(rng);
    Assignment x;
    for (const Job& j : jobs) x.push_back(j.feasible[rng() % j.feasible.size()]);
    const auto got = evaluate_objectives(x, jobs, w);
    const auto want = oracle::expand_objectives(x, jobs, w);
    EXPECT_NEAR(got.f1, want.f1, 1e-9 * want.f1);
    EXPECT_NEAR(got.f2, want.f2, 1e-12);
  }
}

TEST(Objectives, InfeasibleAssignmentRejected) {
  std::vector<Job> jobs{manual_job(0, 2, 5, 0.8)};
  jobs[0].feasible = {1};
  jobs[0].per_qpu[0].reset();
  EXPECT_THROW(evaluate_objectives({0}, jobs, std::vector<double>{0, 0}), ConstraintError);
  EXPECT_THROW(evaluate_objectives({1, 1}, jobs, std::vector<double>{0, 0}), ConstraintError);
}

// ---- sorting and crowding -----------------------------------------------------

TEST(Sorting, IdenticalPointsShareOneFront) {
  const std::vector<ObjectivePoint> p(5, {1, 1});
  const auto f = non_dominated_sort(p);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].size(), 5u);
}

TEST(Sorting, ThreePointExample) {
  const std::vector<ObjectivePoint> p{{1, 2}, {2, 1}, {2, 2}};
  const auto f = non_dominated_sort(p);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0], (std::vector<int>{0, 1}));
  EXPECT_EQ(f[1], (std::vector<int>{2}));
}

TEST(Sorting, RanksMatchBruteForce) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(0, 9);  // coarse grid forces ties
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<ObjectivePoint> p(50);
    for (auto& x : p) x = {static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
    // Rank by repeatedly peeling the points no remaining point dominates.
    std::vector<int> rank(p.size(), -1);
    for (int r = 0, left = 50; left > 0; ++r) {
      std::vector<int> peel;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (rank[i] >= 0) continue;
        bool dominated = false;
        for (std::size_t j = 0; j < p.size(); ++j)
          if (rank[j] < 0 && oracle::beats(p[j], p[i])) dominated = true;
        if (!dominated) peel.push_back(static_cast<int>(i));
      }
      for (int i : peel) rank[i] = r;
      left -= static_cast<int>(peel.size());
    }
    const auto fronts = non_dominated_sort(p);
    std::vector<int> got(p.size(), -1);
    for (std::size_t r = 0; r < fronts.size(); ++r)
      for (int i : fronts[r]) got[i] = static_cast<int>(r);
    EXPECT_EQ(got, rank);
  }
}

TEST(Crowding, TwoPointsAreBoundaries) {
  const std::vector<ObjectivePoint> p{{1, 2}, {2, 1}};
  for (double d : crowding_distance(p)) EXPECT_TRUE(std::isinf(d));
}

TEST(Crowding, EvenlySpacedMiddleIsTwo) {
  const std::vector<ObjectivePoint> p{{0, 2}, {1, 1}, {2, 0}};
  const auto d = crowding_distance(p);
  EXPECT_DOUBLE_EQ(d[1], 2.0);
  EXPECT_TRUE(std::isinf(d[0]) && std::isinf(d[2]));
}

TEST(Crowding, DuplicatesStayFinite) {
  const std::vector<ObjectivePoint> p{{0, 2}, {1, 1}, {1, 1}, {2, 0}};
  const auto d = crowding_distance(p);
  EXPECT_TRUE(std::isfinite(d[1]) && std::isfinite(d[2]));
  const std::vector<ObjectivePoint> flat(4, {3, 3});
  for (double x : crowding_distance(flat)) EXPECT_FALSE(std::isnan(x));
}

// ---- NSGA-II ------------------------------------------------------------------

TEST(Nsga, OneJobOneQpu) {
  const std::vector<Job> jobs{manual_job(0, 1, 5, 0.9)};
  const auto f = nsga2_optimize(jobs, std::vector<double>{0}, params(1));
  EXPECT_EQ(f.entries.size(), 1u);
}

TEST(Nsga, NoExhaustivePointDominatesFront) {
  std::mt19937_64 rng(11);
  for (int seed = 0; seed < 20; ++seed) {
    const int n = 1 + seed % 4, q = 1 + seed % 3;
    const auto jobs = oracle::random_jobs(rng, n, q);
    std::vector<double> w(q);
    for (double& x : w) x = std::uniform_real_distribution<double>(0, 30)(rng);
    const auto front = nsga2_optimize(jobs, w, params(seed));
    const auto exhaustive = oracle::exhaustive_front(jobs, w);
    for (const auto& e : front.entries) {
      EXPECT_NO_THROW(check_feasible(e.assignment, jobs));
      for (const auto& p : exhaustive) EXPECT_FALSE(oracle::beats(p, e.point)) << "seed " << seed;
    }
  }
}

TEST(Nsga, ThreeByThreeRecoversExhaustiveFront) {
  std::mt19937_64 rng(12);
  for (int seed = 0; seed < 10; ++seed) {
    const auto jobs = oracle::random_jobs(rng, 3, 3);
    const std::vector<double> w{0, 5, 10};
    const auto front = nsga2_optimize(jobs, w, params(seed));
    const auto exhaustive = oracle::exhaustive_front(jobs, w);
    for (const auto& e : front.entries)
      for (const auto& p : exhaustive) EXPECT_FALSE(oracle::beats(p, e.point));
    for (const auto& e : front.entries)
      for (const auto& g : front.entries) EXPECT_FALSE(oracle::beats(g.point, e.point));
  }
}

TEST(Nsga, HundredJobsGiveWideFront) {
  const auto qpus = cluster(8, 1);
  const auto ctx = small_context();
  WorkloadContext wc{WorkloadParams{}, 27, make_templates(qpus), EstimatorConfig{}, &ctx};
  wc.params.cut_fraction = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<RawJob> batch;
    for (int i = 0; i < 100; ++i) batch.push_back(make_job(wc, seed, i, 0));
    const auto pre = preprocess(batch, qpus, ctx);
    const auto front = nsga2_optimize(pre.jobs, std::vector<double>(8, 0.0), params(seed));
    ASSERT_GE(front.entries.size(), 5u) << "seed " << seed;
    const auto pts = points_of(front);
    const auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                              [](const auto& a, const auto& b) { return a.f1 < b.f1; });
    EXPECT_GE((hi->f1 - lo->f1) / hi->f1, 0.2) << "seed " << seed;
  }
}

TEST(Nsga, DeterministicPerSeed) {
  std::mt19937_64 rng(13);
  const auto jobs = oracle::random_jobs(rng, 30, 5);
  const std::vector<double> w(5, 0.0);
  const auto a = nsga2_optimize(jobs, w, params(3));
  const auto b = nsga2_optimize(jobs, w, params(3));
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].assignment, b.entries[i].assignment);
    EXPECT_EQ(a.entries[i].point, b.entries[i].point);
  }
  EXPECT_EQ(a.generations, b.generations);
}

TEST(Nsga, FrontIsMutuallyNonDominatedAndFeasible) {
  std::mt19937_64 rng(14);
  for (int seed = 0; seed < 5; ++seed) {
    const auto jobs = oracle::random_jobs(rng, 40, 6);
    const std::vector<double> w{0, 10, 20, 0, 5, 60};
    const auto f = nsga2_optimize(jobs, w, params(seed));
    for (const auto& e : f.entries) {
      EXPECT_NO_THROW(check_feasible(e.assignment, jobs));
      EXPECT_EQ(e.point, oracle::expand_objectives(e.assignment, jobs, w));
      for (const auto& g : f.entries) EXPECT_FALSE(oracle::beats(g.point, e.point));
    }
  }
}

TEST(Nsga, RespectsLimits) {
  std::mt19937_64 rng(15);
  const auto jobs = oracle::random_jobs(rng, 20, 4);
  NsgaParams p = params(1);
  p.max_generations = 3;
  p.ftol = 0;
  const auto f = nsga2_optimize(jobs, std::vector<double>(4, 0.0), p);
  EXPECT_EQ(f.generations, 3);
  EXPECT_EQ(f.evaluations, 400);
  p.population = 3;
  EXPECT_THROW(nsga2_optimize(jobs, std::vector<double>(4, 0.0), p), ParameterError);
}

// ---- MCDM ---------------------------------------------------------------------

TEST(Mcdm, ExtremeWeights) {
  const std::vector<ObjectivePoint> front{{10, 0.5}, {20, 0.3}, {40, 0.1}};
  const auto w = pseudo_weights(front);
  EXPECT_EQ(w[0], (std::array<double, 2>{1, 0}));
  EXPECT_EQ(w[2], (std::array<double, 2>{0, 1}));
}

TEST(Mcdm, WeightsSumToOneAndMatchDefinition) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<ObjectivePoint> f(1 + trial % 30);
    for (auto& p : f) p = {u(rng) * 100, u(rng)};
    const auto w = pseudo_weights(f);
    double lo1 = 1e300, hi1 = -1e300, lo2 = 1e300, hi2 = -1e300;
    for (const auto& p : f) {
      lo1 = std::min(lo1, p.f1), hi1 = std::max(hi1, p.f1);
      lo2 = std::min(lo2, p.f2), hi2 = std::max(hi2, p.f2);
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_NEAR(w[i][0] + w[i][1], 1.0, 1e-12);
      const double a = hi1 > lo1 ? (hi1 - f[i].f1) / (hi1 - lo1) : 0;
      const double b = hi2 > lo2 ? (hi2 - f[i].f2) / (hi2 - lo2) : 0;
      if (a + b > 0) {
        EXPECT_NEAR(w[i][0], a / (a + b), 1e-12);
      }
    }
  }
}

TEST(Mcdm, ExtremePreferencesPickExtremeEntries) {
  const std::vector<ObjectivePoint> front{{10, 0.5}, {15, 0.35}, {20, 0.3}, {40, 0.1}};
  EXPECT_EQ(select_index(front, Preference::fidelity()), 3u);
  EXPECT_EQ(select_index(front, Preference::jct()), 0u);
}

TEST(Mcdm, BalancedMatchesExhaustiveDistance) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    // A synthetic 5-point front: f1 increasing, f2 decreasing.
    std::vector<double> a(5), b(5);
    for (auto& x : a) x = u(rng) * 100;
    for (auto& x : b) x = u(rng);
    std::sort(a.begin(), a.end());
    std::sort(b.rbegin(), b.rend());
    std::vector<ObjectivePoint> front;
    for (int i = 0; i < 5; ++i) front.push_back({a[i], b[i]});
    const auto w = pseudo_weights(front);
    std::size_t best = 0;
    for (std::size_t i = 1; i < 5; ++i)
      if (std::hypot(w[i][0] - 0.5, w[i][1] - 0.5) < std::hypot(w[best][0] - 0.5, w[best][1] - 0.5)) best = i;
    EXPECT_EQ(select_index(front, Preference::balanced()), best);
  }
}

TEST(Mcdm, PreferenceSweepMonotoneInError) {
  std::mt19937_64 rng(23);
  for (int seed = 0; seed < 20; ++seed) {
    const auto jobs = oracle::random_jobs(rng, 25, 5);
    const auto front = nsga2_optimize(jobs, std::vector<double>(5, 0.0), params(seed));
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 100; ++k) {
      const double p1 = k / 100.0;
      const auto i = select_index(front, {p1, 1.0 - p1});
      EXPECT_LE(front.entries[i].point.f2, prev);
      prev = front.entries[i].point.f2;
    }
  }
}

TEST(Mcdm, ParsePreference) {
  EXPECT_EQ(parse_preference("fidelity").p1, 1.0);
  EXPECT_EQ(parse_preference("jct").p2, 1.0);
  EXPECT_EQ(parse_preference("0.25,0.75").p2, 0.75);
  EXPECT_THROW(parse_preference("0.5,0.6"), ConfigError);
  EXPECT_THROW(parse_preference("fast"), ConfigError);
}

// ---- FCFS and classical placement ---------------------------------------------

TEST(Fcfs, IdenticalQpusPileOntoFirst) {
  std::vector<Job> jobs;
  for (int i = 0; i < 10; ++i) jobs.push_back(manual_job(i, 4, 5, 0.8));
  for (int x : fcfs_schedule(jobs)) EXPECT_EQ(x, 0);
}

TEST(Fcfs, ClearlyBestQpuTakesEverything) {
  std::vector<Job> jobs;
  for (int i = 0; i < 10; ++i) {
    jobs.push_back(manual_job(i, 4, 5, 0.5));
    jobs.back().per_qpu[2]->f = 0.9;
  }
  for (int x : fcfs_schedule(jobs)) EXPECT_EQ(x, 2);
}

TEST(Fcfs, LessBalancedThanNsga) {
  const auto ctx = small_context();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto qpus = cluster(6, seed);
    WorkloadContext wc{WorkloadParams{}, 27, make_templates(qpus), EstimatorConfig{}, &ctx};
    wc.params.cut_fraction = 0;
    std::vector<RawJob> batch;
    for (int i = 0; i < 60; ++i) batch.push_back(make_job(wc, seed, i, 0));
    const auto pre = preprocess(batch, qpus, ctx);
    const std::vector<double> w(6, 0.0);
    const auto front = nsga2_optimize(pre.jobs, w, params(seed));
    const Assignment& balanced = select_solution(front, Preference::balanced());
    const Assignment fcfs = fcfs_schedule(pre.jobs);
    auto load = [&](const Assignment& x) {
      std::vector<double> l(6, 0.0);
      for (std::size_t i = 0; i < x.size(); ++i) l[x[i]] += pre.jobs[i].at(x[i]).t;
      return l;
    };
    EXPECT_GT(gini(load(fcfs)), gini(load(balanced))) << "seed " << seed;
  }
}

TEST(Classical, SingleGpuNode) {
  const std::vector<ClassicalNode> nodes{{"cpu", AcceleratorKind::CPU, 8, 1e10, 0}, {"gpu", AcceleratorKind::GPU, 1, 1e12, 0}};
  EXPECT_EQ(filter_score_classical({AcceleratorKind::GPU, 1, 0}, nodes), 1u);
}

TEST(Classical, LeastUtilizedWins) {
  const std::vector<ClassicalNode> nodes{{"a", AcceleratorKind::GPU, 2, 1e12, 0.9}, {"b", AcceleratorKind::GPU, 2, 1e12, 0.1}};
  EXPECT_EQ(filter_score_classical({AcceleratorKind::GPU, 1, 0}, nodes), 1u);
  EXPECT_THROW(filter_score_classical({AcceleratorKind::TPU, 1, 0}, nodes), NoFeasibleNode);
}

TEST(Classical, ChosenNodePassesFilter) {
  std::mt19937_64 rng(31);
  const AcceleratorKind kinds[] = {AcceleratorKind::CPU, AcceleratorKind::GPU, AcceleratorKind::TPU};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ClassicalNode> nodes;
    for (int n = 0; n < 6; ++n)
      nodes.push_back({"n" + std::to_string(n), kinds[rng() % 3], 1 + static_cast<int>(rng() % 4),
                       1e9 * (1 + rng() % 100), (rng() % 100) / 100.0});
    const ClassicalTask task{kinds[rng() % 3], 1 + static_cast<int>(rng() % 4), 1e9 * (rng() % 100)};
    try {
      const auto i = filter_score_classical(task, nodes);
      const auto& n = nodes[i];
      EXPECT_TRUE(n.kind == task.kind && n.count >= task.count && n.speed >= task.min_speed);
      for (const auto& m : nodes)
        if (m.kind == task.kind && m.count >= task.count && m.speed >= task.min_speed) EXPECT_LE(n.utilization, m.utilization);
    } catch (const NoFeasibleNode&) {
      for (const auto& m : nodes)
        EXPECT_FALSE(m.kind == task.kind && m.count >= task.count && m.speed >= task.min_speed);
    }
  }
}
