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
#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qorch/error.hpp"
#include "qorch/rng.hpp"

namespace qorch {

using Edge = std::pair<int, int>;

// Undirected, connected qubit connectivity graph. Copies share the immutable
// adjacency and all-pairs distance tables.
class CouplingMap {
 public:
  CouplingMap() : CouplingMap(1, {}) {}

  CouplingMap(int size, std::vector<Edge> edges) {
    if (size < 1) throw TopologyError("coupling map size must be >= 1");
    auto d = std::make_shared<Data>();
    d->size = size;
    for (auto& [a, b] : edges) {
      if (a < 0 || b < 0 || a >= size || b >= size)
        throw TopologyError("coupling edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") out of range for size " + std::to_string(size));
      if (a == b) throw TopologyError("coupling map self-loop on qubit " + std::to_string(a));
      if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    d->edges = std::move(edges);

    const auto n = static_cast<std::size_t>(size);
    d->edge_index.assign(n * n, -1);
    d->neighbors.assign(n, {});
    for (std::size_t e = 0; e < d->edges.size(); ++e) {
      const auto [a, b] = d->edges[e];
      d->edge_index[a * n + b] = d->edge_index[b * n + a] = static_cast<int>(e);
      d->neighbors[a].push_back(b);
      d->neighbors[b].push_back(a);
    }
    for (auto& nb : d->neighbors) std::sort(nb.begin(), nb.end());

    d->dist.assign(n * n, kUnreachable);
    std::vector<int> frontier;
    for (int src = 0; src < size; ++src) {
      int* row = &d->dist[static_cast<std::size_t>(src) * n];
      row[src] = 0;
      frontier.assign(1, src);
      for (std::size_t head = 0; head < frontier.size(); ++head) {
        const int u = frontier[head];
        for (int v : d->neighbors[u]) {
          if (row[v] != kUnreachable) continue;
          row[v] = row[u] + 1;
          frontier.push_back(v);
        }
      }
      if (static_cast<int>(frontier.size()) != size)
        throw TopologyError("coupling map is not connected");
    }
    data_ = std::move(d);
  }

  int size() const { return data_->size; }
  const std::vector<Edge>& edges() const { return data_->edges; }
  std::size_t edge_count() const { return data_->edges.size(); }

  int edge_index(int a, int b) const {
    return data_->edge_index[static_cast<std::size_t>(a) * data_->size + b];
  }
  bool has_edge(int a, int b) const { return a != b && edge_index(a, b) >= 0; }
  const std::vector<int>& neighbors(int q) const { return data_->neighbors[q]; }
  int degree(int q) const { return static_cast<int>(data_->neighbors[q].size()); }
  int distance(int a, int b) const {
    return data_->dist[static_cast<std::size_t>(a) * data_->size + b];
  }
  int diameter() const { return *std::max_element(data_->dist.begin(), data_->dist.end()); }

  friend bool operator==(const CouplingMap& x, const CouplingMap& y) {
    return x.data_ == y.data_ || (x.size() == y.size() && x.edges() == y.edges());
  }

  static constexpr int kUnreachable = std::numeric_limits<int>::max();

 private:
  struct Data {
    int size = 0;
    std::vector<Edge> edges;
    std::vector<int> edge_index;
    std::vector<std::vector<int>> neighbors;
    std::vector<int> dist;
  };
  std::shared_ptr<const Data> data_;
};

// BFS shortest path from a to b inclusive. Among equal-length paths the one
// taking the smallest next index at every step wins.
inline std::vector<int> coupling_shortest_path(const CouplingMap& map, int a, int b) {
  detail::require(a >= 0 && a < map.size() && b >= 0 && b < map.size(),
                  "coupling_shortest_path: endpoint out of range");
  if (map.distance(a, b) == CouplingMap::kUnreachable)
    throw TopologyError("coupling_shortest_path: endpoints are disconnected");
  std::vector<int> path{a};
  int cur = a;
  while (cur != b) {
    const int want = map.distance(cur, b) - 1;
    for (int nb : map.neighbors(cur)) {
      if (map.distance(nb, b) == want) {
        cur = nb;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

namespace topology {

inline CouplingMap line(int size) {
  std::vector<Edge> e;
  for (int q = 0; q + 1 < size; ++q) e.emplace_back(q, q + 1);
  return CouplingMap(size, std::move(e));
}

// Row-major near-square grid; the last row may be partial.
inline CouplingMap grid(int size) {
  detail::require<TopologyError>(size >= 1, "grid size must be >= 1");
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(size))));
  std::vector<Edge> e;
  for (int q = 0; q < size; ++q) {
    if ((q % cols) + 1 < cols && q + 1 < size) e.emplace_back(q, q + 1);
    if (q + cols < size) e.emplace_back(q, q + cols);
  }
  return CouplingMap(size, std::move(e));
}

// The 27-qubit heavy-hex device layout used by IBM Falcon processors.
inline std::vector<Edge> falcon27_edges() {
  return {{0, 1},   {1, 2},   {1, 4},   {2, 3},   {3, 5},   {4, 7},   {5, 8},
          {6, 7},   {7, 10},  {8, 9},   {8, 11},  {10, 12}, {11, 14}, {12, 13},
          {12, 15}, {13, 14}, {14, 16}, {15, 18}, {16, 19}, {17, 18}, {18, 21},
          {19, 20}, {19, 22}, {21, 23}, {22, 25}, {23, 24}, {24, 25}, {25, 26}};
}

// Heavy-hex approximation of arbitrary size: long rows of degree-2 qubits,
// joined by bridge qubits on alternating columns, truncated to the first
// `size` qubits in BFS order (a BFS prefix of a connected graph stays
// connected).
inline CouplingMap heavy_hex(int size) {
  detail::require<TopologyError>(size >= 1, "heavy-hex size must be >= 1");
  if (size == 27) return CouplingMap(27, falcon27_edges());

  constexpr int kRowLen = 15;
  const int rows = std::max(2, size / kRowLen + 2);
  std::vector<Edge> full;
  std::vector<std::vector<int>> row_ids(rows, std::vector<int>(kRowLen));
  int next = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < kRowLen; ++c) row_ids[r][c] = next++;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < kRowLen; ++c) full.emplace_back(row_ids[r][c], row_ids[r][c + 1]);
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = (r % 2 == 0 ? 0 : 2); c < kRowLen; c += 4) {
      const int bridge = next++;
      full.emplace_back(row_ids[r][c], bridge);
      full.emplace_back(bridge, row_ids[r + 1][c]);
    }
  }
  const CouplingMap big(next, full);

  std::vector<int> order{0};
  std::vector<int> relabel(next, -1);
  relabel[0] = 0;
  for (std::size_t head = 0; head < order.size() && static_cast<int>(order.size()) < size; ++head) {
    for (int v : big.neighbors(order[head])) {
      if (relabel[v] >= 0) continue;
      relabel[v] = static_cast<int>(order.size());
      order.push_back(v);
      if (static_cast<int>(order.size()) == size) break;
    }
  }
  std::vector<Edge> edges;
  for (auto [a, b] : full)
    if (relabel[a] >= 0 && relabel[b] >= 0) edges.emplace_back(relabel[a], relabel[b]);
  return CouplingMap(size, std::move(edges));
}

}  // namespace topology

struct CalibrationData {
  std::vector<double> single_qubit_error;  // per physical qubit
  std::vector<double> two_qubit_error;     // per coupling edge, in CouplingMap::edges() order
  std::vector<double> readout_error;       // per physical qubit
  int epoch = 0;

  void validate(const CouplingMap& map) const {
    const auto n = static_cast<std::size_t>(map.size());
    detail::require(single_qubit_error.size() == n && readout_error.size() == n &&
                        two_qubit_error.size() == map.edge_count(),
                    "calibration arrays are not sized to the coupling map");
    auto in_range = [](const std::vector<double>& v) {
      return std::all_of(v.begin(), v.end(), [](double e) { return e >= 0.0 && e < 1.0; });
    };
    detail::require(in_range(single_qubit_error) && in_range(two_qubit_error) &&
                        in_range(readout_error),
                    "calibration entries must lie in [0, 1)");
  }

  friend bool operator==(const CalibrationData&, const CalibrationData&) = default;
};

using JobId = std::int64_t;

struct QpuState {
  std::string id;
  std::string model;
  CouplingMap coupling;
  CalibrationData calibration;
  std::deque<JobId> queue;
  double busy_until = 0.0;
};

struct TemplateQpu {
  std::string model;
  CouplingMap coupling;
  CalibrationData calibration;
};

// Model-averaged calibration: every entry is the arithmetic mean of the
// members' entries.
inline TemplateQpu make_template_qpu(const std::vector<QpuState>& members) {
  detail::require(!members.empty(), "make_template_qpu: member list is empty");
  const QpuState& first = members.front();
  for (const QpuState& m : members) {
    if (m.model != first.model)
      throw ModelMismatchError("make_template_qpu: mixed models '" + first.model + "' and '" +
                               m.model + "'");
    if (!(m.coupling == first.coupling))
      throw ModelMismatchError("make_template_qpu: coupling maps differ within model '" +
                               first.model + "'");
  }
  TemplateQpu t{first.model, first.coupling, {}};
  auto mean_of = [&](auto field) {
    std::vector<double> out((first.calibration.*field).size(), 0.0);
    for (const QpuState& m : members) {
      const auto& v = m.calibration.*field;
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
    }
    for (double& x : out) x /= static_cast<double>(members.size());
    return out;
  };
  t.calibration.single_qubit_error = mean_of(&CalibrationData::single_qubit_error);
  t.calibration.two_qubit_error = mean_of(&CalibrationData::two_qubit_error);
  t.calibration.readout_error = mean_of(&CalibrationData::readout_error);
  for (const QpuState& m : members)
    t.calibration.epoch = std::max(t.calibration.epoch, m.calibration.epoch);
  return t;
}

// One template per model, in order of first appearance.
inline std::vector<TemplateQpu> make_templates(const std::vector<QpuState>& qpus) {
  std::vector<std::string> models;
  for (const auto& q : qpus)
    if (std::find(models.begin(), models.end(), q.model) == models.end()) models.push_back(q.model);
  std::vector<TemplateQpu> out;
  for (const auto& model : models) {
    std::vector<QpuState> members;
    for (const auto& q : qpus)
      if (q.model == model) members.push_back(q);
    out.push_back(make_template_qpu(members));
  }
  return out;
}

struct DriftParams {
  double sigma = 0.15;
  double eps_min = 1e-5;
  double eps_max = 0.5;
};

// One calibration cycle: every entry is scaled by exp(N(0, sigma)) and clamped
// to [eps_min, eps_max]. The draw depends only on (seed, qpu id, epoch).
inline QpuState advance_calibration(const QpuState& qpu, std::uint64_t seed,
                                    const DriftParams& drift) {
  QpuState next = qpu;
  next.calibration.epoch = qpu.calibration.epoch + 1;
  if (drift.sigma <= 0.0) return next;
  Rng rng(seed_for(seed_for(seed, "drift", static_cast<std::uint64_t>(qpu.calibration.epoch)),
                   qpu.id));
  std::normal_distribution<double> draw(0.0, drift.sigma);
  auto step = [&](std::vector<double>& v) {
    for (double& e : v) e = std::clamp(e * std::exp(draw(rng)), drift.eps_min, drift.eps_max);
  };
  step(next.calibration.single_qubit_error);
  step(next.calibration.two_qubit_error);
  step(next.calibration.readout_error);
  return next;
}

struct ErrorRange {
  double lo = 0.0;
  double hi = 0.0;
};

struct QpuSpec {
  std::string id;  // used verbatim when count == 1; otherwise "<model>-<i>"
  std::string model = "falcon";
  int count = 1;
  int size = 27;
  std::string topology = "heavy-hex";  // heavy-hex | grid | line | custom
  std::vector<Edge> edges;             // custom topology only
  ErrorRange single_qubit_error{1e-4, 1e-3};
  ErrorRange two_qubit_error{5e-3, 3e-2};
  ErrorRange readout_error{1e-2, 5e-2};
};

struct ClusterSpec {
  std::vector<QpuSpec> qpus;
  DriftParams drift;
};

inline CouplingMap make_topology(const QpuSpec& spec) {
  if (spec.topology == "heavy-hex") return topology::heavy_hex(spec.size);
  if (spec.topology == "grid") return topology::grid(spec.size);
  if (spec.topology == "line") return topology::line(spec.size);
  if (spec.topology == "custom") return CouplingMap(spec.size, spec.edges);
  throw ConfigError("unknown topology '" + spec.topology + "' (expected heavy-hex, grid, line or custom)");
}

inline std::vector<std::string> cluster_ids(const ClusterSpec& spec) {
  std::vector<std::string> ids;
  for (const QpuSpec& q : spec.qpus) {
    for (int i = 0; i < q.count; ++i)
      ids.push_back(q.count == 1 && !q.id.empty() ? q.id : q.model + "-" + std::to_string(i));
  }
  return ids;
}

// Base errors are drawn uniformly from each entry's ranges with a sub-seed per
// QPU id, so same-model QPUs still differ.
inline std::vector<QpuState> build_cluster(const ClusterSpec& spec, std::uint64_t seed) {
  if (spec.qpus.empty()) throw ConfigError("cluster must list at least one QPU");
  const auto ids = cluster_ids(spec);
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (ids[i] == ids[j]) throw ConfigError("duplicate QPU id '" + ids[i] + "'");

  std::vector<QpuState> out;
  std::size_t next_id = 0;
  for (const QpuSpec& q : spec.qpus) {
    if (q.count < 1) throw ConfigError("QPU entry count must be >= 1");
    for (auto r : {q.single_qubit_error, q.two_qubit_error, q.readout_error})
      if (!(r.lo >= 0.0 && r.lo <= r.hi && r.hi < 1.0))
        throw ConfigError("QPU error range must satisfy 0 <= lo <= hi < 1");
    const CouplingMap map = make_topology(q);
    for (int i = 0; i < q.count; ++i) {
      QpuState s;
      s.id = ids[next_id++];
      s.model = q.model;
      s.coupling = map;
      Rng rng = make_rng(seed, "cluster/" + s.id);
      auto draw = [&](std::size_t n, ErrorRange r) {
        std::vector<double> v(n);
        for (double& e : v) e = uniform(rng, r.lo, r.hi);
        return v;
      };
      const auto n = static_cast<std::size_t>(map.size());
      s.calibration.single_qubit_error = draw(n, q.single_qubit_error);
      s.calibration.two_qubit_error = draw(map.edge_count(), q.two_qubit_error);
      s.calibration.readout_error = draw(n, q.readout_error);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace qorch
