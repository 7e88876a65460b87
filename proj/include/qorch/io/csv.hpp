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

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qorch/cloudsim/metrics.hpp"
#include "qorch/cloudsim/simulation.hpp"
#include "qorch/error.hpp"
#include "qorch/estimator/regression.hpp"

namespace qorch::io {

// Shortest representation that round-trips, so reruns are byte-identical.
inline std::string fmt(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

inline std::string fmt(std::int64_t v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : cols_(header.size()) { row(header); }

  template <typename... Ts>
  void add(const Ts&... cells) {
    static_assert(sizeof...(Ts) > 0);
    std::vector<std::string> r{cell(cells)...};
    row(r);
  }

  const std::string& str() const { return text_; }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text_;
  }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  template <typename T>
  static std::string cell(const T& v) {
    return fmt(v);
  }

  void row(const std::vector<std::string>& r) {
    if (r.size() != cols_) throw InvariantViolation("csv row width mismatch");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) text_ += ',';
      text_ += r[i];
    }
    text_ += '\n';
  }

  std::size_t cols_;
  std::string text_;
};

inline CsvWriter records_csv(const SimReport& rep) {
  CsvWriter w({"job_id", "arrival", "scheduled", "started", "finished", "qpu", "est_fidelity", "true_fidelity",
               "est_time", "true_time"});
  for (const JobRecord& r : rep.records)
    w.add(r.id, r.arrival, r.scheduled, r.started, r.finished, r.qpu, r.est_fidelity, r.true_fidelity, r.est_time,
          r.true_time);
  return w;
}

inline CsvWriter qpu_load_csv(const SimReport& rep) {
  CsvWriter w({"qpu_id", "active_runtime", "utilization"});
  const SimMetrics m = compute_metrics(rep);
  for (std::size_t i = 0; i < rep.qpu_ids.size(); ++i) w.add(rep.qpu_ids[i], rep.active_runtime[i], m.utilization[i]);
  return w;
}

inline CsvWriter fronts_csv(const SimReport& rep) {
  CsvWriter w({"cycle", "f1_min", "f1_max", "f2_min", "f2_max", "f1_chosen", "f2_chosen"});
  for (const FrontRow& f : rep.fronts) w.add(f.cycle, f.f1_min, f.f1_max, f.f2_min, f.f2_max, f.f1_chosen, f.f2_chosen);
  return w;
}

inline CsvWriter queue_ts_csv(const SimReport& rep) {
  CsvWriter w({"time", "pending_count"});
  for (const QueueSample& s : rep.queue_ts) w.add(s.time, s.pending);
  return w;
}

inline CsvWriter calibration_csv(const std::vector<CalibrationSnapshot>& snaps) {
  CsvWriter w({"qpu_id", "epoch", "entry_kind", "index", "epsilon"});
  for (const CalibrationSnapshot& s : snaps) {
    const auto& c = s.calibration;
    auto dump = [&](const char* kind, const std::vector<double>& v) {
      for (std::size_t i = 0; i < v.size(); ++i) w.add(s.qpu_id, c.epoch, kind, static_cast<int>(i), v[i]);
    };
    dump("single_qubit", c.single_qubit_error);
    dump("two_qubit", c.two_qubit_error);
    dump("readout", c.readout_error);
  }
  return w;
}

inline CsvWriter timeseries_csv(const SimMetrics& m) {
  CsvWriter w({"start", "end", "completed", "mean_jct", "mean_fidelity", "utilization"});
  for (const TimePoint& p : m.series) w.add(p.start, p.end, p.completed, p.mean_jct, p.mean_fidelity, p.utilization);
  return w;
}

inline CsvWriter timings_csv(const SimReport& rep) {
  CsvWriter w({"cycle", "batch_size", "preprocess_s", "optimize_s", "select_s"});
  for (const CycleTiming& t : rep.timings) w.add(t.cycle, t.batch_size, t.preprocess_s, t.optimize_s, t.select_s);
  return w;
}

inline CsvWriter rejections_csv(const SimReport& rep) {
  CsvWriter w({"job_id", "reason"});
  for (const Rejection& r : rep.rejected) w.add(r.id, "\"" + r.reason + "\"");
  return w;
}

// ---- regression datasets --------------------------------------------------

inline CsvWriter dataset_csv(const std::vector<Sample>& data) {
  CsvWriter w({"width", "shots", "depth", "two_qubit_count", "seconds"});
  for (const Sample& s : data) w.add(s.x.width, s.x.shots, s.x.depth, s.x.two_qubit_count, s.seconds);
  return w;
}

inline std::vector<Sample> read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("'" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "width,shots,depth,two_qubit_count,seconds")
    throw ConfigError("'" + path + "' header must be width,shots,depth,two_qubit_count,seconds");
  std::vector<Sample> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double v[5];
    int n = 0;
    while (n < 5 && std::getline(row, cell, ',')) {
      const char* b = cell.data();
      auto [p, ec] = std::from_chars(b, b + cell.size(), v[n]);
      if (ec != std::errc() || p != b + cell.size())
        throw ConfigError("'" + path + "' line " + std::to_string(lineno) + ": bad number '" + cell + "'");
      ++n;
    }
    if (n != 5 || std::getline(row, cell, ','))
      throw ConfigError("'" + path + "' line " + std::to_string(lineno) + ": expected 5 columns");
    out.push_back({{v[0], v[1], v[2], v[3]}, v[4]});
  }
  return out;
}

}  // namespace qorch::io
