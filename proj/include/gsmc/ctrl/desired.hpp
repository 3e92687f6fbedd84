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

#ifndef GSMC_CTRL_DESIRED_HPP_
#define GSMC_CTRL_DESIRED_HPP_

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "gsmc/lie/se2.hpp"
#include "gsmc/lie/so3.hpp"

namespace gsmc {

/// Twice-differentiable desired pose trajectory on the structure group.
/// The samplers must be mutually consistent: gdot_d = g_d xi_d^, checked by
/// finite differences at construction via validate().
template <class Group>
struct DesiredTrajectory {
  std::function<typename Group::Element(double)> pose;
  std::function<Vec3(double)> xi;
  std::function<Vec3(double)> xi_dot;

  /// Probes [t0, t1] and throws if the samplers disagree with the
  /// finite-difference kinematics beyond rel_tol.
  void validate(double t0, double t1, int probes = 9, double rel_tol = 1e-4) const {
    const double fd_h = 1e-5;
    for (int i = 0; i < probes; ++i) {
      const double t = t0 + (t1 - t0) * (i + 0.5) / probes;
      const Vec3 xi_fd =
          Group::log(Group::compose(Group::inverse(pose(t - fd_h)), pose(t + fd_h))) /
          (2.0 * fd_h);
      const Vec3 xi_t = xi(t);
      const double scale = std::max(1.0, xi_t.norm());
      if ((xi_fd - xi_t).norm() > rel_tol * scale) {
        throw std::invalid_argument(
            "DesiredTrajectory: xi sampler inconsistent with pose sampler at t = " +
            std::to_string(t));
      }
      const Vec3 xid_fd = (xi(t + fd_h) - xi(t - fd_h)) / (2.0 * fd_h);
      const Vec3 xid_t = xi_dot(t);
      const double dscale = std::max(1.0, xid_t.norm());
      if ((xid_fd - xid_t).norm() > rel_tol * dscale) {
        throw std::invalid_argument(
            "DesiredTrajectory: xi_dot sampler inconsistent with xi sampler at t = " +
            std::to_string(t));
      }
    }
  }
};

using So3Desired = DesiredTrajectory<So3Group>;
using Se2Desired = DesiredTrajectory<Se2Group>;

template <class Group>
DesiredTrajectory<Group> constant_pose_desired(const typename Group::Element& gd) {
  DesiredTrajectory<Group> d;
  d.pose = [gd](double) { return gd; };
  d.xi = [](double) { return Vec3::Zero(); };
  d.xi_dot = [](double) { return Vec3::Zero(); };
  return d;
}

/// Fixed-axis attitude program R_d(t) = exp(theta(t) n^).  With
/// theta(t) = (amp/freq)(1 - cos(freq t)) the desired rate is the sinusoid
/// Omega_d(t) = amp sin(freq t) n.  Exact (commuting axis).
inline So3Desired so3_axis_sine_desired(const Vec3& axis, double amp, double freq) {
  const Vec3 n = axis.normalized();
  So3Desired d;
  d.pose = [n, amp, freq](double t) {
    return so3_exp((amp / freq) * (1.0 - std::cos(freq * t)) * n);
  };
  d.xi = [n, amp, freq](double t) { return amp * std::sin(freq * t) * n; };
  d.xi_dot = [n, amp, freq](double t) { return amp * freq * std::cos(freq * t) * n; };
  return d;
}

// ---------------------------------------------------------------------------
// Planar paths.  A path supplies position and its first three time
// derivatives; the induced SE(2) trajectory points the heading along the
// velocity, so xi_d = (nu_d, 0, omega_d) satisfies the no-slip algebra.

struct PlanarPathSample {
  double x = 0, y = 0;
  double xd = 0, yd = 0;
  double xdd = 0, ydd = 0;
  double xddd = 0, yddd = 0;
};

using PlanarPath = std::function<PlanarPathSample(double)>;

inline PlanarPath lemniscate_path(double ax, double ay, double wx, double wy) {
  return [=](double t) {
    PlanarPathSample s;
    s.x = ax * std::cos(wx * t);
    s.y = ay * std::sin(wy * t);
    s.xd = -ax * wx * std::sin(wx * t);
    s.yd = ay * wy * std::cos(wy * t);
    s.xdd = -ax * wx * wx * std::cos(wx * t);
    s.ydd = -ay * wy * wy * std::sin(wy * t);
    s.xddd = ax * wx * wx * wx * std::sin(wx * t);
    s.yddd = -ay * wy * wy * wy * std::cos(wy * t);
    return s;
  };
}

inline PlanarPath circle_path(double radius, double omega) {
  return [=](double t) {
    PlanarPathSample s;
    s.x = radius * std::cos(omega * t);
    s.y = radius * std::sin(omega * t);
    s.xd = -radius * omega * std::sin(omega * t);
    s.yd = radius * omega * std::cos(omega * t);
    s.xdd = -radius * omega * omega * std::cos(omega * t);
    s.ydd = -radius * omega * omega * std::sin(omega * t);
    s.xddd = radius * omega * omega * omega * std::sin(omega * t);
    s.yddd = -radius * omega * omega * omega * std::cos(omega * t);
    return s;
  };
}

inline PlanarPath line_path(double vx, double vy) {
  return [=](double t) {
    PlanarPathSample s;
    s.x = vx * t;
    s.y = vy * t;
    s.xd = vx;
    s.yd = vy;
    return s;
  };
}

/// Heading, speed and turn rate of a planar path:
///   theta_d = atan2(yd, xd), nu_d = |(xd, yd)|, omega_d = (xd ydd - yd xdd)/nu^2.
/// Throws DegeneratePath when the speed falls below 1e-9.
inline Se2Desired desired_from_planar_path(const PlanarPath& path, double t0, double t1) {
  auto eval = [path](double t) {
    const PlanarPathSample s = path(t);
    const double nu2 = s.xd * s.xd + s.yd * s.yd;
    const double nu = std::sqrt(nu2);
    if (nu < 1e-9) {
      throw DegeneratePath("desired_from_planar_path: speed " + std::to_string(nu) +
                           " at t = " + std::to_string(t));
    }
    return s;
  };
  Se2Desired d;
  d.pose = [eval](double t) {
    const PlanarPathSample s = eval(t);
    return PoseSE2(s.x, s.y, std::atan2(s.yd, s.xd));
  };
  d.xi = [eval](double t) {
    const PlanarPathSample s = eval(t);
    const double nu2 = s.xd * s.xd + s.yd * s.yd;
    return Vec3(std::sqrt(nu2), 0.0, (s.xd * s.ydd - s.yd * s.xdd) / nu2);
  };
  d.xi_dot = [eval](double t) {
    const PlanarPathSample s = eval(t);
    const double nu2 = s.xd * s.xd + s.yd * s.yd;
    const double nu = std::sqrt(nu2);
    const double cross = s.xd * s.ydd - s.yd * s.xdd;
    const double dot = s.xd * s.xdd + s.yd * s.ydd;
    const double nu_dot = dot / nu;
    const double omega_dot = (s.xd * s.yddd - s.yd * s.xddd) / nu2 - 2.0 * cross * dot / (nu2 * nu2);
    return Vec3(nu_dot, 0.0, omega_dot);
  };
  d.validate(t0, t1);
  return d;
}

}  // namespace gsmc

#endif  // GSMC_CTRL_DESIRED_HPP_
