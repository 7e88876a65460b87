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

#include <random>

#include "oracles.hpp"
#include "qorch/cloudsim/oracle.hpp"
#include "qorch/estimator/fidelity.hpp"
#include "qorch/estimator/plans.hpp"
#include "qorch/estimator/regression.hpp"

using namespace qorch;

namespace {

CalibrationData uniform_calibration(const CouplingMap& map, double e1, double e2, double ro) {
  CalibrationData c;
  c.single_qubit_error.assign(map.size(), e1);
  c.two_qubit_error.assign(map.edge_count(), e2);
  c.readout_error.assign(map.size(), ro);
  return c;
}

CalibrationData random_calibration(const CouplingMap& map, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> e1(1e-4, 1e-3), e2(5e-3, 3e-2), ro(1e-2, 5e-2);
  CalibrationData c;
  for (int q = 0; q < map.size(); ++q) c.single_qubit_error.push_back(e1(rng));
  for (std::size_t e = 0; e < map.edge_count(); ++e) c.two_qubit_error.push_back(e2(rng));
  for (int q = 0; q < map.size(); ++q) c.readout_error.push_back(ro(rng));
  return c;
}

// y = 3 + 2w - 0.5d + 0.01 s + 0.002 w d + 1e-6 s^2 over random features.
std::vector<Sample> quadratic_dataset(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(2, 27), s(100, 10000), d(2, 80), t(0, 60);
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    FeatureVector x{w(rng), s(rng), d(rng), t(rng)};
    const double y = 3 + 2 * x.width - 0.5 * x.depth + 0.01 * x.shots + 0.002 * x.width * x.depth +
                     1e-6 * x.shots * x.shots + 0.3 * x.two_qubit_count;
    out.push_back({x, y});
  }
  return out;
}

std::vector<Sample> oracle_dataset(int n, double noise, std::uint64_t seed) {
  QpuSpec spec;
  spec.count = 2;
  const auto qpus = build_cluster({{spec}, {}}, seed);
  WorkloadParams w;
  w.width_max = 27;
  return sample_training_set(w, make_templates(qpus), TimingModel{}, n, noise, seed);
}

EstimatorContext context_for(const RegressionModel& m) { return {m, 6.0, kDefaultKnitConstant, false}; }

}  // namespace

// ---- fidelity -----------------------------------------------------------------

TEST(Fidelity, NoiselessIsOne) {
  const Circuit c = generate_random_circuit(1, 8, 20, 0.4, 10);
  const auto tc = transpile(c, topology::heavy_hex(27));
  EXPECT_EQ(estimate_fidelity(tc, uniform_calibration(tc.coupling, 0, 0, 0)), 1.0);
}

TEST(Fidelity, TwoFactorProduct) {
  const Circuit c{2, {Gate::two(0, 1), Gate::measure(0)}, 1};
  const auto tc = transpile(c, topology::line(2), "line", {std::vector<int>{0, 1}});
  EXPECT_NEAR(estimate_fidelity(tc, uniform_calibration(tc.coupling, 0.5, 0.02, 0.01)), 0.9702, 1e-15);
}

TEST(Fidelity, MatchesLogSpaceOracle) {
  std::mt19937_64 rng(3);
  const CouplingMap map = topology::heavy_hex(27);
  for (int i = 0; i < 1000; ++i) {
    const Circuit c = generate_random_circuit(rng(), 1 + rng() % 20, 2 + rng() % 40, 0.35, 10);
    const auto tc = transpile(c, map);
    const auto cal = random_calibration(map, rng);
    const double f = estimate_fidelity(tc, cal);
    EXPECT_NEAR(f, oracle::log_space_fidelity(tc, cal), 1e-9);
    EXPECT_GT(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(Fidelity, MonotoneInErrorRates) {
  std::mt19937_64 rng(4);
  const CouplingMap map = topology::heavy_hex(27);
  for (int i = 0; i < 200; ++i) {
    const auto tc = transpile(generate_random_circuit(rng(), 10, 20, 0.3, 10), map);
    auto cal = random_calibration(map, rng);
    const double before = estimate_fidelity(tc, cal);
    std::uniform_real_distribution<double> grow(1.0, 1.5);
    for (double& e : cal.single_qubit_error) e *= grow(rng);
    for (double& e : cal.two_qubit_error) e *= grow(rng);
    for (double& e : cal.readout_error) e *= grow(rng);
    EXPECT_LE(estimate_fidelity(tc, cal), before);
  }
}

TEST(Fidelity, ExtraNoisyOpStrictlyLowers) {
  const CouplingMap map = topology::line(3);
  const auto cal = uniform_calibration(map, 0.001, 0.01, 0.02);
  Circuit c{3, {Gate::two(0, 1), Gate::one(2)}, 1};
  const TranspileOptions id{std::vector<int>{0, 1, 2}};
  const double f0 = estimate_fidelity(transpile(c, map, "", id), cal);
  c.gates.push_back(Gate::one(1));
  EXPECT_LT(estimate_fidelity(transpile(c, map, "", id), cal), f0);
}

TEST(Fidelity, MinFragment) {
  EXPECT_EQ(min_fragment_fidelity(std::vector<double>{0.9}), 0.9);
  EXPECT_EQ(min_fragment_fidelity(std::vector<double>{0.95, 0.80, 0.99}), 0.80);
  EXPECT_THROW(min_fragment_fidelity(std::vector<double>{}), ParameterError);
  EXPECT_THROW(min_fragment_fidelity(std::vector<double>{1.2}), ParameterError);
}

TEST(Fidelity, MinFragmentOfCutCircuit) {
  std::mt19937_64 rng(8);
  const CouplingMap map = topology::heavy_hex(27);
  const auto cal = random_calibration(map, rng);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Circuit c = generate_random_circuit(seed, 16, 12, 0.3, 10, {Interaction::Linear});
    const CutSolution cut = cut_circuit(c, 100);
    std::vector<double> per;
    for (const auto& f : cut.fragments) per.push_back(oracle::log_space_fidelity(transpile(f, map), cal));
    const double expect = *std::min_element(per.begin(), per.end());
    EXPECT_NEAR(min_fragment_fidelity(cut, per), expect, 0);
    const auto q = estimate_quantum(cut.fragments, map, cal, context_for(fit_regression(quadratic_dataset(50, 1), 2)));
    EXPECT_NEAR(q.fidelity, expect, 1e-9);
  }
}

// ---- regression ---------------------------------------------------------------

TEST(Regression, TermsOfDegreeTwo) {
  const auto t = polynomial_terms(2);
  EXPECT_EQ(t.size(), 15u);
  EXPECT_EQ(t.front(), (Exponents{0, 0, 0, 0}));
}

TEST(Regression, RealizableQuadraticFitsExactly) {
  const auto data = quadratic_dataset(400, 1);
  const RegressionModel m = fit_regression(data, 2);
  EXPECT_GE(m.train_r2, 0.999999);
  EXPECT_GE(kfold_r2(data, 2, 5, 9), 0.999);
}

TEST(Regression, ConstantTarget) {
  auto data = quadratic_dataset(100, 2);
  for (auto& s : data) s.seconds = 5.0;
  const RegressionModel m = fit_regression(data, 2);
  for (std::size_t t = 1; t < m.coefficients.size(); ++t) EXPECT_NEAR(m.coefficients[t], 0.0, 1e-9);
  for (const auto& s : data) EXPECT_NEAR(estimate_execution_time(m, s.x), 5.0, 1e-6);
  EXPECT_NEAR(estimate_execution_time(m, {13, 777, 31, 4}), 5.0, 1e-6);
}

TEST(Regression, TrainingPointReproduced) {
  const auto data = quadratic_dataset(200, 3);
  const RegressionModel m = fit_regression(data, 2);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(m.predict(data[i].x) / data[i].seconds, 1.0, 1e-6);
}

TEST(Regression, MeanPredictorScoresZero) {
  const std::vector<double> y{1, 2, 3, 4, 10};
  const std::vector<double> mean(5, 4.0);
  EXPECT_DOUBLE_EQ(r2_score(y, mean), 0.0);
  EXPECT_DOUBLE_EQ(r2_score(y, y), 1.0);
}

TEST(Regression, DegreeTwoBeatsDegreeOneOnOracleData) {
  const auto data = oracle_dataset(2000, 0.01, 5);
  EXPECT_GT(kfold_r2(data, 2, 5, 1), kfold_r2(data, 1, 5, 1));
}

TEST(Regression, OracleCircuitsMedianErrorWithinFivePercent) {
  const auto train = oracle_dataset(7000, 0.01, 6);
  const RegressionModel m = fit_regression(train, 2);
  const auto test = oracle_dataset(100, 0.0, 77);
  std::vector<double> rel;
  for (const auto& s : test) rel.push_back(std::abs(estimate_execution_time(m, s.x) - s.seconds) / s.seconds);
  std::nth_element(rel.begin(), rel.begin() + rel.size() / 2, rel.end());
  EXPECT_LE(rel[rel.size() / 2], 0.05);
}

TEST(Regression, KFoldArgumentChecks) {
  const auto data = quadratic_dataset(30, 4);
  EXPECT_THROW(kfold_r2(data, 2, 1, 1), ParameterError);
  EXPECT_THROW(kfold_r2(std::span(data).first(3), 2, 5, 1), ParameterError);
  EXPECT_THROW(fit_regression(std::span(data).first(10), 2), ParameterError);
}

TEST(Regression, FoldsDeterministicPerSeed) {
  const auto data = quadratic_dataset(300, 5);
  const auto a = kfold_r2_report(data, 2, 5, 11);
  const auto b = kfold_r2_report(data, 2, 5, 11);
  EXPECT_EQ(a.fold_r2, b.fold_r2);
  EXPECT_EQ(a.fold_r2.size(), 5u);
}

// ---- classical cost -----------------------------------------------------------

TEST(Knitting, FlopsArithmetic) {
  EXPECT_DOUBLE_EQ(knitting_flops(0, 2, 6.0, 1e6), 2e6);
  EXPECT_DOUBLE_EQ(knitting_flops(3, 2, 6.0, 1e6), 4.32e8);
  EXPECT_DOUBLE_EQ(knitting_flops(5, 2) / knitting_flops(3, 2), 36.0);
}

TEST(Knitting, ClassicalTime) {
  const Accelerator cpu{"cpu", AcceleratorKind::CPU, 1e10};
  const Accelerator gpu{"gpu", AcceleratorKind::GPU, 1e12};
  EXPECT_EQ(classical_time(0, gpu), 0.0);
  EXPECT_DOUBLE_EQ(classical_time(1e12, gpu), 1.0);
  const double f = knitting_flops(7, 2);
  EXPECT_DOUBLE_EQ(classical_time(f, cpu) / classical_time(f, gpu), 100.0);
}

// ---- resource plans -----------------------------------------------------------

TEST(Plans, UncutOnlyWithoutCutBudgets) {
  const auto qpus = build_cluster({{QpuSpec{}}, {}}, 1);
  const auto ctx = context_for(fit_regression(oracle_dataset(500, 0.01, 1), 2));
  const Circuit c = generate_random_circuit(2, 10, 20, 0.3, 1000);
  const auto plans =
      generate_resource_plans(c, make_templates(qpus), {{"gpu", AcceleratorKind::GPU, 1e12}}, {}, 3, ctx);
  ASSERT_EQ(plans.size(), 1u);
  EXPECT_EQ(plans[0].k, 0);
  EXPECT_FALSE(plans[0].accelerator.has_value());
}

TEST(Plans, DominatedPlanDiscarded) {
  ResourcePlan a, b;
  a.est_fidelity = 0.9;
  a.est_total_time = 10;
  b.est_fidelity = 0.8;
  b.est_total_time = 12;
  const auto front = pareto_plans({a, b});
  ASSERT_EQ(front.size(), 1u);
  EXPECT_EQ(front[0].est_fidelity, 0.9);
}

TEST(Plans, TwentyQubitPlansMutuallyNonDominated) {
  QpuSpec big;
  big.model = "eagle";
  big.size = 65;
  const auto qpus = build_cluster({{QpuSpec{}, big}, {}}, 3);
  const auto templates = make_templates(qpus);
  ASSERT_EQ(templates.size(), 2u);
  const auto ctx = context_for(fit_regression(oracle_dataset(1000, 0.01, 2), 2));
  const std::vector<Accelerator> acc{{"cpu", AcceleratorKind::CPU, 1e10}, {"gpu", AcceleratorKind::GPU, 1e12}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Circuit c = generate_random_circuit(seed, 20, 20, 0.3, 2000, {Interaction::Linear});
    const auto plans = generate_resource_plans(c, templates, acc, {3, 5, 7}, 3, ctx);
    EXPECT_GE(plans.size(), 1u);
    EXPECT_LE(plans.size(), 3u);
    for (const auto& p : plans)
      for (const auto& q : plans) {
        const bool dom = p.est_fidelity >= q.est_fidelity && p.est_total_time <= q.est_total_time &&
                         (p.est_fidelity > q.est_fidelity || p.est_total_time < q.est_total_time);
        EXPECT_FALSE(dom);
      }
  }
}

TEST(Plans, NoFitMeansNoPlan) {
  const auto qpus = build_cluster({{QpuSpec{}}, {}}, 1);
  const auto ctx = context_for(fit_regression(quadratic_dataset(50, 1), 2));
  const Circuit c = generate_random_circuit(2, 60, 10, 0.0, 100);
  EXPECT_THROW(generate_resource_plans(c, make_templates(qpus), {}, {3}, 3, ctx), NoFeasiblePlan);
}

TEST(Plans, CutPlanTradesTimeForFidelity) {
  const auto qpus = build_cluster({{QpuSpec{}}, {}}, 4);
  const auto t = make_templates(qpus)[0];
  const auto ctx = context_for(fit_regression(oracle_dataset(3000, 0.01, 3), 2));
  const Accelerator gpu{"gpu", AcceleratorKind::GPU, 1e12};
  int considered = 0, better = 0;
  for (std::uint64_t seed = 0; seed < 200 && considered < 50; ++seed) {
    const Circuit c = generate_random_circuit(seed, 12 + seed % 8, 24, 0.3, 1000, {Interaction::Linear});
    const Bisection b = bisect_qubits(c);
    if (b.crossings > 3) continue;
    ++considered;
    const auto uncut = estimate_quantum({c}, t.coupling, t.calibration, ctx);
    const CutSolution cut = apply_cut(c, b, 3);
    const auto frag = estimate_quantum(cut.fragments, t.coupling, t.calibration, ctx);
    const double cut_time = frag.seconds + classical_time(knitting_flops(cut.achieved_cuts, 2), gpu);
    if (frag.fidelity > uncut.fidelity && cut_time > uncut.seconds) ++better;
  }
  ASSERT_GE(considered, 20);
  EXPECT_GE(better, 0.9 * considered);
}
