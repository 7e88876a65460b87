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

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qorch/error.hpp"
#include "qorch/scheduler/nsga2.hpp"

namespace qorch {

// Pseudo-weight vector (w1, w2) per front entry, in objective order: w1 is the
// JCT objective, w2 the error objective. Each component is the normalized
// distance to the worst value of that objective, divided by the sum over
// objectives.
inline std::vector<std::array<double, 2>> pseudo_weights(std::span<const ObjectivePoint> front) {
  detail::require(!front.empty(), "pseudo_weights: empty front");
  double lo1 = front[0].f1, hi1 = front[0].f1, lo2 = front[0].f2, hi2 = front[0].f2;
  for (const auto& p : front) {
    lo1 = std::min(lo1, p.f1);
    hi1 = std::max(hi1, p.f1);
    lo2 = std::min(lo2, p.f2);
    hi2 = std::max(hi2, p.f2);
  }
  std::vector<std::array<double, 2>> out;
  out.reserve(front.size());
  for (const auto& p : front) {
    const double a = hi1 > lo1 ? (hi1 - p.f1) / (hi1 - lo1) : 0.0;
    const double b = hi2 > lo2 ? (hi2 - p.f2) / (hi2 - lo2) : 0.0;
    const double s = a + b;
    out.push_back(s > 0.0 ? std::array<double, 2>{a / s, b / s} : std::array<double, 2>{0.5, 0.5});
  }
  return out;
}

inline std::vector<std::array<double, 2>> pseudo_weights(const ParetoFront& front) {
  std::vector<ObjectivePoint> pts;
  for (const auto& e : front.entries) pts.push_back(e.point);
  return pseudo_weights(pts);
}

// User preference: p1 weighs mean fidelity, p2 mean JCT; p1 + p2 = 1.
struct Preference {
  double p1 = 0.5;
  double p2 = 0.5;

  static Preference fidelity() { return {1.0, 0.0}; }
  static Preference jct() { return {0.0, 1.0}; }
  static Preference balanced() { return {0.5, 0.5}; }

  void validate() const {
    detail::require(p1 >= 0.0 && p2 >= 0.0 && std::abs(p1 + p2 - 1.0) <= 1e-9,
                    "preference components must be nonnegative and sum to 1");
  }
};

// Index of the entry whose pseudo-weights are closest to the preference.
// The fidelity component p1 lines up with the error objective's weight w2.
inline std::size_t select_index(std::span<const ObjectivePoint> front, const Preference& pref) {
  pref.validate();
  const auto w = pseudo_weights(front);
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < front.size(); ++i) {
    const double d = std::hypot(w[i][0] - pref.p2, w[i][1] - pref.p1);
    if (d < best_d || (d == best_d && front[i].f1 < front[best].f1)) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

inline std::size_t select_index(const ParetoFront& front, const Preference& pref) {
  std::vector<ObjectivePoint> pts;
  for (const auto& e : front.entries) pts.push_back(e.point);
  return select_index(pts, pref);
}

inline const Assignment& select_solution(const ParetoFront& front, const Preference& pref) {
  return front.entries.at(select_index(front, pref)).assignment;
}

inline Preference parse_preference(const std::string& s) {
  if (s == "fidelity") return Preference::fidelity();
  if (s == "jct") return Preference::jct();
  if (s == "balanced") return Preference::balanced();
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw ConfigError("preference must be fidelity, jct, balanced or p1,p2 (got '" + s + "')");
  Preference p;
  try {
    p.p1 = std::stod(s.substr(0, comma));
    p.p2 = std::stod(s.substr(comma + 1));
  } catch (const std::exception&) {
    throw ConfigError("preference '" + s + "' is not a pair of numbers");
  }
  if (!(p.p1 >= 0.0 && p.p2 >= 0.0 && std::abs(p.p1 + p.p2 - 1.0) <= 1e-9))
    throw ConfigError("preference components must be nonnegative and sum to 1");
  return p;
}

}  // namespace qorch
