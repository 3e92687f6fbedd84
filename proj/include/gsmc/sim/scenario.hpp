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

#ifndef GSMC_SIM_SCENARIO_HPP_
#define GSMC_SIM_SCENARIO_HPP_

#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "gsmc/sim/csv.hpp"
#include "gsmc/sim/simulate.hpp"

namespace gsmc {

/// Experiment configuration: system parameters, controller gains, initial
/// conditions, desired-trajectory spec, integrator settings and output
/// paths.  Loadable from an INI-style file with sections [system], [gains],
/// [initial], [desired], [integrator], [output]; SI units throughout.
struct SimScenario {
  enum class SystemKind { spacecraft, unicycle };
  enum class DesiredKind { lemniscate, circle, line, fixed_pose, axis_sine, none };

  std::string name = "scenario";
  SystemKind system = SystemKind::unicycle;

  SpacecraftParams sc = SpacecraftParams::small_sat();
  UnicycleParams uc;

  SlidingGains gains{1.5, 2.2};
  double k_b = 10.0, k1 = 0.01, k2 = 0.1;

  // unicycle initial conditions
  double init_x = 0.0, init_y = 0.0, init_theta = 0.0;
  Vec2 init_sigma = Vec2::Zero();
  Vec2 init_sigmadot = Vec2::Zero();

  // spacecraft initial conditions
  Vec3 init_rotvec = Vec3::Zero();  // R(0) = exp(rotvec^)
  Vec3 init_omega = Vec3::Zero();   // body rate
  Vec3 init_phi = Vec3::Zero();     // wheel angles
  Vec3 init_phidot = Vec3::Zero();  // wheel rates

  DesiredKind desired = DesiredKind::lemniscate;
  double des_ax = 0.8, des_ay = 0.6, des_wx = 0.1, des_wy = 0.2;  // lemniscate
  double des_radius = 1.0, des_omega = 0.1;                       // circle
  double des_vx = 0.1, des_vy = 0.0;                              // line
  Vec3 des_rotvec = Vec3::Zero();                                 // fixed_pose
  Vec3 des_axis = Vec3::UnitZ();                                  // axis_sine
  double des_amp = 0.3, des_freq = 0.5;

  IntegratorConfig integ{1e-3, Method::rk4_cg, 60.0, 1};

  std::string csv_path;
  std::string plot_path;

  void validate() const {
    if (gains.lambda <= 0.0 || gains.k_s <= 0.0) {
      throw ConfigError("scenario: gains lambda and k_s must be positive");
    }
    if (system == SystemKind::unicycle && (k_b <= 0.0 || k1 <= 0.0 || k2 <= 0.0)) {
      throw ConfigError("scenario: gains k_b, k1, k2 must be positive");
    }
    try {
      integ.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("scenario: ") + e.what());
    }
    if (system == SystemKind::unicycle) {
      switch (desired) {
        case DesiredKind::lemniscate:
        case DesiredKind::circle:
        case DesiredKind::line:
        case DesiredKind::fixed_pose:
          break;
        default:
          throw ConfigError("scenario: unicycle requires a planar or fixed desired trajectory");
      }
    } else {
      switch (desired) {
        case DesiredKind::fixed_pose:
        case DesiredKind::axis_sine:
        case DesiredKind::none:
          break;
        default:
          throw ConfigError("scenario: spacecraft requires fixed_pose, axis_sine or none");
      }
    }
  }

  /// Canonical text form; the config hash stamped into outputs is the
  /// FNV-1a hash of this string.
  std::string canonical() const {
    std::ostringstream os;
    auto d = [&](double v) {
      os << ' ' << detail::fmt_double(v);
    };
    os << "system " << (system == SystemKind::spacecraft ? "spacecraft" : "unicycle");
    if (system == SystemKind::spacecraft) {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d(sc.J(i, j));
      for (int i = 0; i < 3; ++i) d(sc.J_phi[i]);
    } else {
      d(uc.mu);
      d(uc.J_R);
      d(uc.J_sigma);
      d(uc.rho);
      d(uc.d);
    }
    os << "\ngains";
    d(gains.lambda);
    d(gains.k_s);
    d(k_b);
    d(k1);
    d(k2);
    os << "\ninitial";
    if (system == SystemKind::spacecraft) {
      for (int i = 0; i < 3; ++i) d(init_rotvec[i]);
      for (int i = 0; i < 3; ++i) d(init_omega[i]);
      for (int i = 0; i < 3; ++i) d(init_phi[i]);
      for (int i = 0; i < 3; ++i) d(init_phidot[i]);
    } else {
      d(init_x);
      d(init_y);
      d(init_theta);
      d(init_sigma.x());
      d(init_sigma.y());
      d(init_sigmadot.x());
      d(init_sigmadot.y());
    }
    os << "\ndesired " << static_cast<int>(desired);
    switch (desired) {
      case DesiredKind::lemniscate:
        d(des_ax);
        d(des_ay);
        d(des_wx);
        d(des_wy);
        break;
      case DesiredKind::circle:
        d(des_radius);
        d(des_omega);
        break;
      case DesiredKind::line:
        d(des_vx);
        d(des_vy);
        break;
      case DesiredKind::fixed_pose:
        for (int i = 0; i < 3; ++i) d(des_rotvec[i]);
        break;
      case DesiredKind::axis_sine:
        for (int i = 0; i < 3; ++i) d(des_axis[i]);
        d(des_amp);
        d(des_freq);
        break;
      case DesiredKind::none:
        break;
    }
    os << "\nintegrator";
    d(integ.h);
    os << ' ' << (integ.method == Method::rk4_cg ? "rk4_cg" : "lie_euler");
    d(integ.t_end);
    os << ' ' << integ.log_stride << '\n';
    return os.str();
  }

  std::uint64_t hash() const { return fnv1a(canonical()); }
};

// ---------------------------------------------------------------------------
// INI-style parsing.

inline std::map<std::string, std::map<std::string, std::string>> parse_ini(std::istream& is) {
  std::map<std::string, std::map<std::string, std::string>> out;
  std::string line, section;
  size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config: malformed section at line " + std::to_string(lineno));
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
    }
    out[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

namespace detail {

class IniView {
 public:
  explicit IniView(const std::map<std::string, std::map<std::string, std::string>>& kv)
      : kv_(kv) {}

  bool has(const std::string& sec, const std::string& key) const {
    const auto s = kv_.find(sec);
    return s != kv_.end() && s->second.count(key) > 0;
  }

  std::string str(const std::string& sec, const std::string& key,
                  const std::string& fallback) const {
    const auto s = kv_.find(sec);
    if (s == kv_.end()) return fallback;
    const auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
  }

  double num(const std::string& sec, const std::string& key, double fallback) const {
    if (!has(sec, key)) return fallback;
    const std::string v = str(sec, key, "");
    try {
      size_t pos = 0;
      const double d = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return d;
    } catch (const std::exception&) {
      throw ConfigError("config: [" + sec + "] " + key + " = '" + v + "' is not a number");
    }
  }

 private:
  const std::map<std::string, std::map<std::string, std::string>>& kv_;
};

}  // namespace detail

inline SimScenario scenario_from_ini(std::istream& is, const std::string& name) {
  const auto kv = parse_ini(is);
  const detail::IniView ini(kv);
  SimScenario sc;
  sc.name = name;

  const std::string type = ini.str("system", "type", "unicycle");
  if (type == "unicycle") {
    sc.system = SimScenario::SystemKind::unicycle;
    sc.uc.mu = ini.num("system", "mu", sc.uc.mu);
    sc.uc.J_R = ini.num("system", "J_R", sc.uc.J_R);
    sc.uc.J_sigma = ini.num("system", "J_sigma", sc.uc.J_sigma);
    sc.uc.rho = ini.num("system", "rho", sc.uc.rho);
    sc.uc.d = ini.num("system", "d", sc.uc.d);
  } else if (type == "spacecraft") {
    sc.system = SimScenario::SystemKind::spacecraft;
    const char* jkeys[6] = {"J_xx", "J_yy", "J_zz", "J_xy", "J_xz", "J_yz"};
    double j[6];
    for (int i = 0; i < 6; ++i) j[i] = ini.num("system", jkeys[i], i < 3 ? sc.sc.J(i, i) : 0.0);
    sc.sc.J << j[0], j[3], j[4], j[3], j[1], j[5], j[4], j[5], j[2];
    for (int i = 0; i < 3; ++i) {
      sc.sc.J_phi[i] = ini.num("system", "J_phi_" + std::to_string(i + 1), sc.sc.J_phi[i]);
    }
  } else {
    throw ConfigError("config: unknown system type '" + type + "'");
  }

  const double lambda = ini.num("gains", "lambda", 1.5);
  const double k_s = ini.num("gains", "k_s", 2.2);
  if (lambda <= 0.0 || k_s <= 0.0) {
    throw ConfigError("config: lambda and k_s must be positive");
  }
  sc.gains = SlidingGains(lambda, k_s);
  sc.k_b = ini.num("gains", "k_b", sc.k_b);
  sc.k1 = ini.num("gains", "k1", sc.k1);
  sc.k2 = ini.num("gains", "k2", sc.k2);

  sc.init_x = ini.num("initial", "x", 0.0);
  sc.init_y = ini.num("initial", "y", 0.0);
  sc.init_theta = ini.num("initial", "theta", 0.0);
  sc.init_sigma = Vec2(ini.num("initial", "sigma1", 0.0), ini.num("initial", "sigma2", 0.0));
  sc.init_sigmadot =
      Vec2(ini.num("initial", "sigmadot1", 0.0), ini.num("initial", "sigmadot2", 0.0));
  for (int i = 0; i < 3; ++i) {
    const std::string sfx = "_" + std::to_string(i + 1);
    sc.init_rotvec[i] = ini.num("initial", "rotvec" + sfx, 0.0);
    sc.init_omega[i] = ini.num("initial", "omega" + sfx, 0.0);
    sc.init_phi[i] = ini.num("initial", "phi" + sfx, 0.0);
    sc.init_phidot[i] = ini.num("initial", "phidot" + sfx, 0.0);
  }

  const std::string des = ini.str("desired", "type", "lemniscate");
  if (des == "lemniscate") {
    sc.desired = SimScenario::DesiredKind::lemniscate;
    sc.des_ax = ini.num("desired", "ax", sc.des_ax);
    sc.des_ay = ini.num("desired", "ay", sc.des_ay);
    sc.des_wx = ini.num("desired", "wx", sc.des_wx);
    sc.des_wy = ini.num("desired", "wy", sc.des_wy);
  } else if (des == "circle") {
    sc.desired = SimScenario::DesiredKind::circle;
    sc.des_radius = ini.num("desired", "radius", sc.des_radius);
    sc.des_omega = ini.num("desired", "omega", sc.des_omega);
  } else if (des == "line") {
    sc.desired = SimScenario::DesiredKind::line;
    sc.des_vx = ini.num("desired", "vx", sc.des_vx);
    sc.des_vy = ini.num("desired", "vy", sc.des_vy);
  } else if (des == "fixed_pose") {
    sc.desired = SimScenario::DesiredKind::fixed_pose;
    for (int i = 0; i < 3; ++i) {
      sc.des_rotvec[i] = ini.num("desired", "rotvec_" + std::to_string(i + 1), 0.0);
    }
  } else if (des == "axis_sine") {
    sc.desired = SimScenario::DesiredKind::axis_sine;
    for (int i = 0; i < 3; ++i) {
      sc.des_axis[i] = ini.num("desired", "axis_" + std::to_string(i + 1), sc.des_axis[i]);
    }
    sc.des_amp = ini.num("desired", "amp", sc.des_amp);
    sc.des_freq = ini.num("desired", "freq", sc.des_freq);
  } else if (des == "none") {
    sc.desired = SimScenario::DesiredKind::none;
  } else {
    throw ConfigError("config: unknown desired type '" + des + "'");
  }

  sc.integ.h = ini.num("integrator", "h", sc.integ.h);
  const std::string method = ini.str("integrator", "method", "rk4_cg");
  if (method == "rk4_cg") {
    sc.integ.method = Method::rk4_cg;
  } else if (method == "lie_euler") {
    sc.integ.method = Method::lie_euler;
  } else {
    throw ConfigError("config: unknown integrator method '" + method + "'");
  }
  sc.integ.t_end = ini.num("integrator", "t_end", sc.integ.t_end);
  sc.integ.log_stride = static_cast<int>(ini.num("integrator", "log_stride", 1));

  sc.csv_path = ini.str("output", "csv", name + ".csv");
  sc.plot_path = ini.str("output", "plot", name + "_plot.py");

  sc.validate();
  return sc;
}

inline SimScenario scenario_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open '" + path + "'");
  std::string name = path;
  const auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  if (dot != std::string::npos) name = name.substr(0, dot);
  return scenario_from_ini(f, name);
}

// ---------------------------------------------------------------------------
// Built-in scenarios.

inline SimScenario builtin_unicycle_lemniscate() {
  SimScenario sc;
  sc.name = "unicycle-lemniscate";
  sc.system = SimScenario::SystemKind::unicycle;
  sc.gains = SlidingGains(1.5, 2.2);
  sc.k_b = 10.0;
  sc.k1 = 0.01;
  sc.k2 = 0.1;
  sc.init_x = -1.0;
  sc.init_y = -1.0;
  sc.init_theta = -std::numbers::pi / 4.0;
  sc.desired = SimScenario::DesiredKind::lemniscate;
  sc.integ = IntegratorConfig{1e-3, Method::rk4_cg, 60.0, 1};
  sc.csv_path = "unicycle-lemniscate.csv";
  sc.plot_path = "unicycle-lemniscate_plot.py";
  return sc;
}

inline SimScenario builtin_spacecraft_rest_to_rest() {
  SimScenario sc;
  sc.name = "spacecraft-rest-to-rest";
  sc.system = SimScenario::SystemKind::spacecraft;
  sc.gains = SlidingGains(1.5, 2.2);
  sc.init_rotvec = Vec3(0.0, 0.0, 2.0);
  sc.desired = SimScenario::DesiredKind::fixed_pose;
  sc.des_rotvec = Vec3::Zero();
  sc.integ = IntegratorConfig{1e-3, Method::rk4_cg, 20.0, 1};
  sc.csv_path = "spacecraft-rest-to-rest.csv";
  sc.plot_path = "spacecraft-rest-to-rest_plot.py";
  return sc;
}

inline SimScenario builtin_spacecraft_sine_track() {
  SimScenario sc;
  sc.name = "spacecraft-sine-track";
  sc.system = SimScenario::SystemKind::spacecraft;
  sc.gains = SlidingGains(1.5, 2.2);
  sc.init_rotvec = Vec3(0.5, -0.4, 0.8);
  sc.desired = SimScenario::DesiredKind::axis_sine;
  sc.des_axis = Vec3(1.0, 1.0, 1.0);
  sc.des_amp = 0.3;
  sc.des_freq = 0.5;
  sc.integ = IntegratorConfig{1e-3, Method::rk4_cg, 30.0, 1};
  sc.csv_path = "spacecraft-sine-track.csv";
  sc.plot_path = "spacecraft-sine-track_plot.py";
  return sc;
}

inline SimScenario builtin_spacecraft_free_spin() {
  SimScenario sc;
  sc.name = "spacecraft-free-spin";
  sc.system = SimScenario::SystemKind::spacecraft;
  sc.desired = SimScenario::DesiredKind::none;
  sc.init_omega = Vec3(0.3, -0.2, 0.4);
  sc.init_phidot = Vec3(5.0, -3.0, 2.0);
  sc.integ = IntegratorConfig{1e-3, Method::rk4_cg, 10.0, 1};
  sc.csv_path = "spacecraft-free-spin.csv";
  sc.plot_path = "spacecraft-free-spin_plot.py";
  return sc;
}

inline std::optional<SimScenario> builtin_scenario(const std::string& name) {
  if (name == "unicycle-lemniscate") return builtin_unicycle_lemniscate();
  if (name == "spacecraft-rest-to-rest") return builtin_spacecraft_rest_to_rest();
  if (name == "spacecraft-sine-track") return builtin_spacecraft_sine_track();
  if (name == "spacecraft-free-spin") return builtin_spacecraft_free_spin();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Scenario execution.

inline Se2Desired scenario_se2_desired(const SimScenario& sc) {
  const double t1 = sc.integ.t_end;
  switch (sc.desired) {
    case SimScenario::DesiredKind::lemniscate:
      return desired_from_planar_path(lemniscate_path(sc.des_ax, sc.des_ay, sc.des_wx, sc.des_wy),
                                      0.0, t1);
    case SimScenario::DesiredKind::circle:
      return desired_from_planar_path(circle_path(sc.des_radius, sc.des_omega), 0.0, t1);
    case SimScenario::DesiredKind::line:
      return desired_from_planar_path(line_path(sc.des_vx, sc.des_vy), 0.0, t1);
    case SimScenario::DesiredKind::fixed_pose:
      return constant_pose_desired<Se2Group>(se2_exp(sc.des_rotvec));
    default:
      throw ConfigError("scenario: no SE(2) desired trajectory configured");
  }
}

inline So3Desired scenario_so3_desired(const SimScenario& sc) {
  switch (sc.desired) {
    case SimScenario::DesiredKind::fixed_pose:
      return constant_pose_desired<So3Group>(so3_exp(sc.des_rotvec));
    case SimScenario::DesiredKind::axis_sine:
      return so3_axis_sine_desired(sc.des_axis, sc.des_amp, sc.des_freq);
    default:
      throw ConfigError("scenario: no SO(3) desired trajectory configured");
  }
}

inline UnicycleSystem::State scenario_unicycle_state(const SimScenario& sc) {
  UnicycleSystem::State s;
  s.g = PoseSE2(sc.init_x, sc.init_y, sc.init_theta);
  s.r = sc.init_sigma;
  s.rdot = sc.init_sigmadot;
  return s;
}

inline SpacecraftSystem::State scenario_spacecraft_state(const SimScenario& sc,
                                                         const SpacecraftSystem& sys) {
  SpacecraftSystem::State s;
  s.g = so3_exp(sc.init_rotvec);
  s.r = sc.init_phi;
  s.rdot = sc.init_phidot;
  s.p = sys.momentum_from_velocity(sc.init_omega, sc.init_phidot);
  return s;
}

struct RunOutcome {
  bool aborted = false;
  AbortInfo abort;
  size_t samples = 0;
  std::string csv_path;
  std::string plot_path;
};

/// Runs the scenario and writes its CSV and plot script.  Deterministic:
/// the output bytes are a pure function of the scenario.
inline RunOutcome run_scenario(const SimScenario& sc) {
  sc.validate();
  RunOutcome out;
  out.csv_path = sc.csv_path;
  out.plot_path = sc.plot_path;
  const std::uint64_t hash = sc.hash();

  std::ofstream csv(sc.csv_path);
  if (!csv) throw ConfigError("scenario: cannot write '" + sc.csv_path + "'");

  int tau_count = 0;
  if (sc.system == SimScenario::SystemKind::unicycle) {
    const UnicycleSystem sys(sc.uc);
    const Se2KinematicController ctrl(sc.k_b, sc.k1, sc.k2);
    const auto res = simulate_unicycle_tracking(sys, ctrl, sc.gains, scenario_se2_desired(sc),
                                                scenario_unicycle_state(sc), sc.integ);
    write_csv(csv, res.samples, hash);
    out.samples = res.samples.size();
    out.aborted = !res.completed();
    if (res.abort) out.abort = *res.abort;
    tau_count = 2;
  } else {
    const SpacecraftSystem sys(sc.sc);
    const auto x0 = scenario_spacecraft_state(sc, sys);
    SimResult<SpacecraftSample> res;
    if (sc.desired == SimScenario::DesiredKind::none) {
      res = simulate_spacecraft_free_spin(sys, x0, sc.integ);
    } else {
      const So3KinematicController ctrl;
      res = simulate_spacecraft_tracking(sys, ctrl, sc.gains, scenario_so3_desired(sc), x0,
                                         sc.integ);
    }
    write_csv(csv, res.samples, hash);
    out.samples = res.samples.size();
    out.aborted = !res.completed();
    if (res.abort) out.abort = *res.abort;
    tau_count = 3;
  }
  csv.close();

  if (!sc.plot_path.empty()) {
    std::ofstream plot(sc.plot_path);
    if (!plot) throw ConfigError("scenario: cannot write '" + sc.plot_path + "'");
    write_plot_script(plot, sc.csv_path, tau_count);
  }
  return out;
}

}  // namespace gsmc

#endif  // GSMC_SIM_SCENARIO_HPP_
