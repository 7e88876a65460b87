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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "qorch/circuit.hpp"
#include "qorch/error.hpp"
#include "qorch/rng.hpp"

namespace qorch {

inline constexpr int kFeatureCount = 4;

struct FeatureVector {
  double width = 0;
  double shots = 0;
  double depth = 0;
  double two_qubit_count = 0;

  std::array<double, kFeatureCount> as_array() const { return {width, shots, depth, two_qubit_count}; }

  static FeatureVector from(const CircuitMetrics& m) {
    return {static_cast<double>(m.width), static_cast<double>(m.shots),
            static_cast<double>(m.depth), static_cast<double>(m.two_qubit_count)};
  }
};

struct Sample {
  FeatureVector x;
  double seconds = 0;
};

using Exponents = std::array<int, kFeatureCount>;

// All monomials of the four features with total degree <= degree, ordered by
// total degree then lexicographically descending exponents. Term 0 is the
// intercept.
inline std::vector<Exponents> polynomial_terms(int degree) {
  std::vector<Exponents> out;
  for (int total = 0; total <= degree; ++total) {
    for (int a = total; a >= 0; --a)
      for (int b = total - a; b >= 0; --b)
        for (int c = total - a - b; c >= 0; --c) out.push_back({a, b, c, total - a - b - c});
  }
  return out;
}

struct RegressionModel {
  int degree = 2;
  std::vector<Exponents> terms;
  std::vector<double> coefficients;
  std::array<double, kFeatureCount> feature_means{};
  std::array<double, kFeatureCount> feature_scales{1, 1, 1, 1};
  double train_r2 = 0;

  double predict(const FeatureVector& f) const {
    const auto raw = f.as_array();
    std::array<double, kFeatureCount> z{};
    for (int i = 0; i < kFeatureCount; ++i) z[i] = (raw[i] - feature_means[i]) / feature_scales[i];
    double y = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      double v = coefficients[t];
      for (int i = 0; i < kFeatureCount; ++i)
        for (int p = 0; p < terms[t][i]; ++p) v *= z[i];
      y += v;
    }
    return y;
  }
};

// Coefficient of determination. A constant target has no variance to
// explain: a perfect prediction scores 1, anything else 0.
inline double r2_score(std::span<const double> y, std::span<const double> yhat) {
  detail::require(y.size() == yhat.size() && !y.empty(), "r2_score: size mismatch or empty");
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double ss_res = 0;
  double ss_tot = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - yhat[i]) * (y[i] - yhat[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

inline constexpr double kRidgeLambda = 1e-8;

// Z-score the features, expand to monomials and solve the damped normal
// equations (X'X + lambda I) b = X'y. The intercept is not damped.
inline RegressionModel fit_regression(std::span<const Sample> data, int degree) {
  detail::require(degree >= 1, "fit_regression: degree must be >= 1");
  RegressionModel m;
  m.degree = degree;
  m.terms = polynomial_terms(degree);
  const auto p = static_cast<Eigen::Index>(m.terms.size());
  detail::require(data.size() > m.terms.size(),
                  "fit_regression: need more than " + std::to_string(m.terms.size()) +
                      " samples for degree " + std::to_string(degree));
  const auto n = static_cast<Eigen::Index>(data.size());

  for (int i = 0; i < kFeatureCount; ++i) {
    double mean = 0;
    for (const Sample& s : data) mean += s.x.as_array()[i];
    mean /= static_cast<double>(n);
    double var = 0;
    for (const Sample& s : data) var += (s.x.as_array()[i] - mean) * (s.x.as_array()[i] - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    m.feature_means[i] = mean;
    m.feature_scales[i] = sd > 1e-12 * std::max(1.0, std::abs(mean)) ? sd : 1.0;
  }

  Eigen::MatrixXd x(n, p);
  Eigen::VectorXd y(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto raw = data[r].x.as_array();
    std::array<double, kFeatureCount> z{};
    for (int i = 0; i < kFeatureCount; ++i) z[i] = (raw[i] - m.feature_means[i]) / m.feature_scales[i];
    for (Eigen::Index t = 0; t < p; ++t) {
      double v = 1;
      for (int i = 0; i < kFeatureCount; ++i)
        for (int k = 0; k < m.terms[t][i]; ++k) v *= z[i];
      x(r, t) = v;
    }
    y(r) = data[r].seconds;
  }
  Eigen::MatrixXd a = x.transpose() * x;
  a.diagonal().tail(p - 1).array() += kRidgeLambda;
  const Eigen::VectorXd b = x.transpose() * y;
  const Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) throw FitError("fit_regression: normal equations are not positive definite");
  const Eigen::VectorXd coef = llt.solve(b);
  if (!coef.allFinite()) throw FitError("fit_regression: non-finite coefficients");
  m.coefficients.assign(coef.data(), coef.data() + p);

  const Eigen::VectorXd fitted = x * coef;
  m.train_r2 = r2_score(std::span<const double>(y.data(), y.size()),
                        std::span<const double>(fitted.data(), fitted.size()));
  return m;
}

inline constexpr double kMinPredictedSeconds = 1e-3;

inline double estimate_execution_time(const RegressionModel& m, const FeatureVector& f) {
  return std::max(kMinPredictedSeconds, m.predict(f));
}

struct KFoldReport {
  std::vector<double> fold_r2;
  double mean_r2 = 0;
};

// Shuffled K-fold cross-validation; folds differ in size by at most one.
inline KFoldReport kfold_r2_report(std::span<const Sample> data, int degree, int k_folds,
                                   std::uint64_t seed) {
  detail::require(k_folds >= 2, "kfold_r2: k_folds must be >= 2");
  detail::require(data.size() >= static_cast<std::size_t>(k_folds),
                  "kfold_r2: every fold needs at least one sample");
  std::vector<std::size_t> idx(data.size());
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);

  KFoldReport rep;
  const std::size_t n = data.size();
  for (int f = 0; f < k_folds; ++f) {
    const std::size_t lo = n * f / k_folds;
    const std::size_t hi = n * (f + 1) / k_folds;
    std::vector<Sample> train;
    std::vector<double> y;
    std::vector<double> yhat;
    train.reserve(n - (hi - lo));
    for (std::size_t i = 0; i < n; ++i)
      if (i < lo || i >= hi) train.push_back(data[idx[i]]);
    const RegressionModel model = fit_regression(train, degree);
    for (std::size_t i = lo; i < hi; ++i) {
      y.push_back(data[idx[i]].seconds);
      yhat.push_back(model.predict(data[idx[i]].x));
    }
    rep.fold_r2.push_back(r2_score(y, yhat));
  }
  rep.mean_r2 = std::accumulate(rep.fold_r2.begin(), rep.fold_r2.end(), 0.0) / k_folds;
  return rep;
}

inline double kfold_r2(std::span<const Sample> data, int degree, int k_folds, std::uint64_t seed) {
  return kfold_r2_report(data, degree, k_folds, seed).mean_r2;
}

}  // namespace qorch
