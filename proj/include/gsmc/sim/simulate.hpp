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

#ifndef GSMC_SIM_SIMULATE_HPP_
#define GSMC_SIM_SIMULATE_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "gsmc/ctrl/closed_forms.hpp"
#include "gsmc/ctrl/sliding.hpp"
#include "gsmc/dyn/spacecraft.hpp"
#include "gsmc/dyn/unicycle.hpp"
#include "gsmc/kin/se2_ctrl.hpp"
#include "gsmc/kin/so3_ctrl.hpp"
#include "gsmc/sim/integrate.hpp"

namespace gsmc {

/// A run that entered the epsilon-neighborhood of the controller's critical
/// set is aborted with a diagnostic record instead of clamped: the theory
/// excludes that set, and silently continuing would poison the output data.
struct AbortInfo {
  double t = 0.0;
  std::string reason;
};

template <class Sample>
struct SimResult {
  std::vector<Sample> samples;
  std::optional<AbortInfo> abort;
  bool completed() const { return !abort.has_value(); }
};

struct UnicycleSample {
  double t;
  double x, y, theta;
  double x_d, y_d, theta_d;
  double err_frobenius;  // |I3 - g_e|_F of the homogeneous form
  double err_xi;         // |xi_e|
  double sliding_norm;   // |varsigma_bar|
  double tau_1, tau_2;
  double lyapunov_W;
};

struct SpacecraftSample {
  double t;
  std::array<double, 9> R;    // row-major
  std::array<double, 9> R_d;  // row-major
  double err_frobenius;       // |I3 - R_e|_F
  double err_xi;              // |Omega_e|
  double sliding_norm;        // |varsigma|
  std::array<double, 3> tau;
  double lyapunov_W;
};

namespace detail {

inline void check_finite(double v, double t) {
  if (!std::isfinite(v)) {
    throw std::runtime_error("simulation diverged (non-finite state) at t = " +
                             std::to_string(t));
  }
}

inline std::array<double, 9> row_major(const Mat3& m) {
  std::array<double, 9> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = m(i, j);
  return out;
}

}  // namespace detail

/// Closed-loop unicycle tracking of a desired SE(2) trajectory with the
/// nonholonomic sliding-mode law.  Deterministic given the configuration.
inline SimResult<UnicycleSample> simulate_unicycle_tracking(
    const UnicycleSystem& sys, const Se2KinematicController& ctrl, const SlidingGains& k,
    const Se2Desired& des, const UnicycleSystem::State& x0, const IntegratorConfig& cfg) {
  cfg.validate();
  SimResult<UnicycleSample> out;
  const long steps = std::lround(cfg.t_end / cfg.h);
  out.samples.reserve(static_cast<size_t>(steps / cfg.log_stride) + 2);

  auto rhs = [&](double t, const UnicycleSystem::State& s) {
    const auto force = constrained_tracking_force(sys, ctrl, s, des, t, k);
    return sys.rhs(s, force.f_u);
  };

  UnicycleSystem::State s = x0;
  for (long i = 0; i <= steps; ++i) {
    const double t = i * cfg.h;
    const PoseSE2 ge = se2_compose(se2_inverse(des.pose(t)), s.g);
    if (ctrl.near_critical(ge)) {
      out.abort = AbortInfo{t, "pose error entered the critical-set neighborhood (theta_e = " +
                                   std::to_string(ge.theta) + ")"};
      return out;
    }
    detail::check_finite(s.g.p.x() + s.g.theta + s.rdot.sum(), t);

    if (i % cfg.log_stride == 0 || i == steps) {
      UnicycleSample sample;
      sample.t = t;
      sample.x = s.g.p.x();
      sample.y = s.g.p.y();
      sample.theta = s.g.theta;
      const PoseSE2 gd = des.pose(t);
      sample.x_d = gd.p.x();
      sample.y_d = gd.p.y();
      sample.theta_d = gd.theta;
      sample.err_frobenius = (Mat3::Identity() - ge.homogeneous()).norm();
      const auto force = constrained_tracking_force(sys, ctrl, s, des, t, k);
      const auto diag = constrained_lyapunov_value(sys, ctrl, s, des, t, k);
      sample.err_xi = diag.err_xi;
      sample.sliding_norm = force.sliding.norm();
      sample.tau_1 = force.tau.x();
      sample.tau_2 = force.tau.y();
      sample.lyapunov_W = diag.lyapunov_W;
      out.samples.push_back(sample);
    }
    if (i == steps) break;

    try {
      s = step<Se2Group, 2>(rhs, s, t, cfg);
    } catch (const NearAntipodal& e) {
      out.abort = AbortInfo{t, e.what()};
      return out;
    }
  }
  return out;
}

/// Closed-loop spacecraft attitude tracking with the reaction-wheel law.
inline SimResult<SpacecraftSample> simulate_spacecraft_tracking(
    const SpacecraftSystem& sys, const So3KinematicController& ctrl, const SlidingGains& k,
    const So3Desired& des, const SpacecraftSystem::State& x0, const IntegratorConfig& cfg) {
  cfg.validate();
  SimResult<SpacecraftSample> out;
  const long steps = std::lround(cfg.t_end / cfg.h);
  out.samples.reserve(static_cast<size_t>(steps / cfg.log_stride) + 2);

  auto rhs = [&](double t, const SpacecraftSystem::State& s) {
    const auto force = tracking_force(sys, ctrl, s, des, t, k);
    return sys.rhs(s, force.f_u);
  };

  SpacecraftSystem::State s = x0;
  for (long i = 0; i <= steps; ++i) {
    const double t = i * cfg.h;
    const Rotation3 Rd = des.pose(t);
    const Rotation3 Re = Rd.inverse() * s.g;
    if (ctrl.near_critical(Re)) {
      out.abort = AbortInfo{t, "attitude error entered the critical-set neighborhood (tr = " +
                                   std::to_string(Re.trace()) + ")"};
      return out;
    }
    detail::check_finite(s.p.sum() + s.rdot.sum(), t);

    if (i % cfg.log_stride == 0 || i == steps) {
      SpacecraftSample sample;
      sample.t = t;
      sample.R = detail::row_major(s.g.matrix());
      sample.R_d = detail::row_major(Rd.matrix());
      sample.err_frobenius = (Mat3::Identity() - Re.matrix()).norm();
      const auto force = tracking_force(sys, ctrl, s, des, t, k);
      const auto diag = lyapunov_value(sys, ctrl, s, des, t, k);
      sample.err_xi = diag.err_xi;
      sample.sliding_norm = force.sliding.norm();
      sample.tau = {force.tau.x(), force.tau.y(), force.tau.z()};
      sample.lyapunov_W = diag.lyapunov_W;
      out.samples.push_back(sample);
    }
    if (i == steps) break;

    try {
      s = step<So3Group, 3>(rhs, s, t, cfg);
    } catch (const NearAntipodal& e) {
      out.abort = AbortInfo{t, e.what()};
      return out;
    }
  }
  return out;
}

/// Uncontrolled spacecraft (f_u = 0, tau_G = 0).  The Lyapunov column
/// records the conserved reduced kinetic energy.
inline SimResult<SpacecraftSample> simulate_spacecraft_free_spin(
    const SpacecraftSystem& sys, const SpacecraftSystem::State& x0,
    const IntegratorConfig& cfg) {
  cfg.validate();
  SimResult<SpacecraftSample> out;
  const long steps = std::lround(cfg.t_end / cfg.h);
  out.samples.reserve(static_cast<size_t>(steps / cfg.log_stride) + 2);

  auto rhs = [&](double, const SpacecraftSystem::State& s) { return sys.rhs(s, Vec3::Zero()); };

  SpacecraftSystem::State s = x0;
  const auto identity = detail::row_major(Mat3::Identity());
  for (long i = 0; i <= steps; ++i) {
    const double t = i * cfg.h;
    detail::check_finite(s.p.sum() + s.rdot.sum(), t);
    if (i % cfg.log_stride == 0 || i == steps) {
      SpacecraftSample sample;
      sample.t = t;
      sample.R = detail::row_major(s.g.matrix());
      sample.R_d = identity;
      sample.err_frobenius = (Mat3::Identity() - s.g.matrix()).norm();
      sample.err_xi = sys.body_velocity(s).norm();
      sample.sliding_norm = 0.0;
      sample.tau = {0.0, 0.0, 0.0};
      sample.lyapunov_W = sys.kinetic_energy(s);
      out.samples.push_back(sample);
    }
    if (i == steps) break;
    s = step<So3Group, 3>(rhs, s, t, cfg);
  }
  return out;
}

}  // namespace gsmc

#endif  // GSMC_SIM_SIMULATE_HPP_
