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

#ifndef GSMC_SIM_CSV_HPP_
#define GSMC_SIM_CSV_HPP_

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gsmc/errors.hpp"
#include "gsmc/sim/simulate.hpp"

namespace gsmc {

inline constexpr const char* kToolVersion = "gsmc 0.1.0";

/// FNV-1a, used to stamp outputs with a hash of the originating config.
inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace detail {

/// Shortest round-trippable decimal form; locale-independent.
inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline void write_metadata(std::ostream& os, std::uint64_t config_hash) {
  os << "# " << kToolVersion << "\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(config_hash));
  os << "# config_hash " << buf << "\n";
}

inline void write_csv(std::ostream& os, const std::vector<UnicycleSample>& samples,
                      std::uint64_t config_hash) {
  write_metadata(os, config_hash);
  os << "# system unicycle\n";
  os << "t,x,y,theta,x_d,y_d,theta_d,err_frobenius,err_xi,sliding_norm,tau_1,tau_2,"
        "lyapunov_W\n";
  for (const auto& s : samples) {
    os << detail::fmt_double(s.t) << ',' << detail::fmt_double(s.x) << ','
       << detail::fmt_double(s.y) << ',' << detail::fmt_double(s.theta) << ','
       << detail::fmt_double(s.x_d) << ',' << detail::fmt_double(s.y_d) << ','
       << detail::fmt_double(s.theta_d) << ',' << detail::fmt_double(s.err_frobenius) << ','
       << detail::fmt_double(s.err_xi) << ',' << detail::fmt_double(s.sliding_norm) << ','
       << detail::fmt_double(s.tau_1) << ',' << detail::fmt_double(s.tau_2) << ','
       << detail::fmt_double(s.lyapunov_W) << '\n';
  }
}

inline void write_csv(std::ostream& os, const std::vector<SpacecraftSample>& samples,
                      std::uint64_t config_hash) {
  write_metadata(os, config_hash);
  os << "# system spacecraft\n";
  os << "t";
  for (int i = 0; i < 9; ++i) os << ",R_" << i / 3 << i % 3;
  for (int i = 0; i < 9; ++i) os << ",Rd_" << i / 3 << i % 3;
  os << ",err_frobenius,err_xi,sliding_norm,tau_1,tau_2,tau_3,lyapunov_W\n";
  for (const auto& s : samples) {
    os << detail::fmt_double(s.t);
    for (double v : s.R) os << ',' << detail::fmt_double(v);
    for (double v : s.R_d) os << ',' << detail::fmt_double(v);
    os << ',' << detail::fmt_double(s.err_frobenius) << ',' << detail::fmt_double(s.err_xi)
       << ',' << detail::fmt_double(s.sliding_norm);
    for (double v : s.tau) os << ',' << detail::fmt_double(v);
    os << ',' << detail::fmt_double(s.lyapunov_W) << '\n';
  }
}

/// Columnar view of a trajectory CSV; '#' lines are collected as metadata.
struct CsvTable {
  std::vector<std::string> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return static_cast<int>(i);
    }
    return -1;
  }

  std::vector<double> column(const std::string& name) const {
    const int idx = column_index(name);
    if (idx < 0) throw ConfigError("csv: missing column '" + name + "'");
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[idx]);
    return out;
  }
};

inline CsvTable read_csv(std::istream& is) {
  CsvTable table;
  std::string line;
  bool header_seen = false;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.metadata.push_back(line);
      continue;
    }
    std::stringstream ss(line);
    std::string field;
    if (!header_seen) {
      while (std::getline(ss, field, ',')) table.columns.push_back(field);
      if (table.columns.empty()) throw ConfigError("csv: empty header row");
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(table.columns.size());
    while (std::getline(ss, field, ',')) {
      size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(field, &pos);
      } catch (const std::exception&) {
        throw ConfigError("csv: non-numeric field '" + field + "' at line " +
                          std::to_string(lineno));
      }
      if (pos != field.size()) {
        throw ConfigError("csv: trailing garbage in field '" + field + "' at line " +
                          std::to_string(lineno));
      }
      row.push_back(v);
    }
    if (row.size() != table.columns.size()) {
      throw ConfigError("csv: row at line " + std::to_string(lineno) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(table.columns.size()));
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ConfigError("csv: no header row found");
  return table;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("csv: cannot open '" + path + "'");
  return read_csv(f);
}

/// Four-panel matplotlib script for a trajectory CSV (error norms, sliding
/// norm and control effort against time).
inline void write_plot_script(std::ostream& os, const std::string& csv_name,
                              int tau_count) {
  os << "#!/usr/bin/env python3\n"
     << "import matplotlib.pyplot as plt\n"
     << "import numpy as np\n\n"
     << "data = np.genfromtxt(\"" << csv_name << "\", delimiter=\",\", names=True,\n"
     << "                     comments=\"#\")\n"
     << "t = data[\"t\"]\n";
  os << "tau = np.sqrt(";
  for (int i = 1; i <= tau_count; ++i) {
    os << (i > 1 ? " + " : "") << "data[\"tau_" << i << "\"]**2";
  }
  os << ")\n\n"
     << "fig, axes = plt.subplots(2, 2, figsize=(10, 7), sharex=True)\n"
     << "panels = [\n"
     << "    (data[\"err_frobenius\"], r\"$\\|I_3 - g_e\\|_F$\"),\n"
     << "    (data[\"err_xi\"], r\"$\\|\\xi_e\\|$\"),\n"
     << "    (data[\"sliding_norm\"], r\"$\\|\\varsigma\\|$\"),\n"
     << "    (tau, r\"$\\|\\tau\\|$\"),\n"
     << "]\n"
     << "for ax, (y, label) in zip(axes.flat, panels):\n"
     << "    ax.plot(t, y)\n"
     << "    ax.set_ylabel(label)\n"
     << "    ax.grid(True, alpha=0.3)\n"
     << "for ax in axes[-1]:\n"
     << "    ax.set_xlabel(\"t [s]\")\n"
     << "fig.tight_layout()\n"
     << "plt.show()\n";
}

}  // namespace gsmc

#endif  // GSMC_SIM_CSV_HPP_
