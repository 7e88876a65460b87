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

#include <cmath>
#include <vector>

#include "qorch/cloudsim/config.hpp"
#include "qorch/error.hpp"
#include "qorch/rng.hpp"

namespace qorch {

// Jobs per hour in effect at simulated time t. The profile repeats daily.
inline double arrival_rate_at(const std::vector<ArrivalBucket>& profile, double t) {
  detail::require(!profile.empty(), "arrival_rate_at: empty profile");
  const int hour = static_cast<int>(std::fmod(std::floor(t / 3600.0), 24.0));
  double rate = profile.front().rate;
  for (const ArrivalBucket& b : profile)
    if (b.hour <= hour) rate = b.rate;
  return rate;
}

// Piecewise-homogeneous Poisson process: exponential gaps at the rate of the
// current hour. A gap that crosses an hour boundary is redrawn from the
// boundary, which is exact by memorylessness.
inline std::vector<double> arrival_process(const std::vector<ArrivalBucket>& profile, double duration,
                                           Rng& rng) {
  detail::require(!profile.empty(), "arrival_process: empty profile");
  for (const ArrivalBucket& b : profile) detail::require(b.rate > 0, "arrival_process: rates must be > 0");
  std::vector<double> out;
  double t = 0;
  while (t < duration) {
    const double rate = arrival_rate_at(profile, t) / 3600.0;
    const double boundary = (std::floor(t / 3600.0) + 1.0) * 3600.0;
    const double next = t + std::exponential_distribution<double>(rate)(rng);
    if (next >= boundary) {
      t = boundary;
      continue;
    }
    if (next >= duration) break;
    out.push_back(next);
    t = next;
  }
  return out;
}

}  // namespace qorch
