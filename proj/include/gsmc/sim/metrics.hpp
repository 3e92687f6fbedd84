// Copyright 2026 The gsmc Authors
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

#ifndef GSMC_SIM_METRICS_HPP_
#define GSMC_SIM_METRICS_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "gsmc/sim/csv.hpp"

namespace gsmc {

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

/// Fitted slope of log(w) over the window [t0, t1]; values are floored at
/// 1e-300 before the log.
inline double fit_log_rate(const std::vector<double>& t, const std::vector<double>& w,
                           double t0, double t1) {
  std::vector<double> ts, ys;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || t[i] > t1) continue;
    ts.push_back(t[i]);
    ys.push_back(std::log(std::max(w[i], 1e-300)));
  }
  return ts.size() < 2 ? 0.0 : fit_slope(ts, ys);
}

struct TrajectoryMetrics {
  std::optional<double> settling_time;  // first t after which err_frobenius stays < threshold
  double settle_threshold = 0.05;
  double lyapunov_rate = 0.0;  // fitted slope of log W over [1 s, t_end]
  double peak_tau = 0.0;
  double final_err_frobenius = 0.0;
  double final_err_xi = 0.0;
  double final_sliding_norm = 0.0;
};

inline TrajectoryMetrics compute_metrics(const CsvTable& table, double settle_threshold = 0.05) {
  TrajectoryMetrics m;
  m.settle_threshold = settle_threshold;
  const auto t = table.column("t");
  const auto err = table.column("err_frobenius");
  const auto w = table.column("lyapunov_W");
  if (t.empty()) throw ConfigError("metrics: no data rows");

  // settling: scan from the end for the last index at or above threshold
  long last_bad = -1;
  for (size_t i = 0; i < err.size(); ++i) {
    if (err[i] >= settle_threshold) last_bad = static_cast<long>(i);
  }
  if (last_bad + 1 < static_cast<long>(t.size())) {
    m.settling_time = last_bad < 0 ? 0.0 : t[static_cast<size_t>(last_bad + 1)];
  }

  m.lyapunov_rate = fit_log_rate(t, w, 1.0, t.back());

  double peak = 0.0;
  std::vector<int> tau_cols;
  for (int i = 1;; ++i) {
    const int idx = table.column_index("tau_" + std::to_string(i));
    if (idx < 0) break;
    tau_cols.push_back(idx);
  }
  if (tau_cols.empty()) throw ConfigError("metrics: no tau_* columns");
  for (const auto& row : table.rows) {
    double s2 = 0.0;
    for (int idx : tau_cols) s2 += row[idx] * row[idx];
    peak = std::max(peak, std::sqrt(s2));
  }
  m.peak_tau = peak;

  m.final_err_frobenius = err.back();
  m.final_err_xi = table.column("err_xi").back();
  m.final_sliding_norm = table.column("sliding_norm").back();
  return m;
}

}  // namespace gsmc

#endif  // GSMC_SIM_METRICS_HPP_
