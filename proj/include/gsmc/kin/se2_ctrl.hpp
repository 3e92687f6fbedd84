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

#ifndef GSMC_KIN_SE2_CTRL_HPP_
#define GSMC_KIN_SE2_CTRL_HPP_

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gsmc/lie/se2.hpp"

namespace gsmc {

/// beta is treated as identically 0 below this |v_z|.
inline constexpr double kBetaFloor = 1e-12;

/// Heading-correction angle beta(v_z) = -arctan(z_y/z_x) in [-pi/2, pi/2],
/// with beta(0, 0) = 0.  Evaluated as -atan2(sign(z_x) z_y, |z_x|) so the
/// quadrant handling is explicit and z_x = 0 is well defined.
///
/// Note beta is even under v_z -> -v_z (the ratio is invariant), so while
/// it matches the printed controller and its descent analysis, the
/// inversion identity xi_u(g^{-1}) = -xi_u(g) holds only up to the
/// k_b beta term; see the certification report.
inline double se2_beta(const Vec2& vz) {
  if (vz.norm() < kBetaFloor) return 0.0;
  const double s = vz.x() >= 0.0 ? 1.0 : -1.0;
  return -std::atan2(s * vz.y(), s * vz.x());
}

/// Chain matrix H(z) with zdot = H(z) xi_e along gedot = ge xi_e^.
/// Top-left block E^{-T}(theta); top-right (1/theta)(I - E^{-T}(theta)) v_z
/// with a series branch for the 0/0 at theta = 0.
inline Mat3 se2_chain_H(const Vec3& z) {
  const double th = z.z();
  double q;  // (1 - alpha(theta)) / theta
  if (std::abs(th) < kSmallAngle) {
    q = th / 12.0 + th * th * th / 720.0;
  } else {
    q = (1.0 - se2_alpha(th)) / th;
  }
  Mat2 j;
  j << q, 0.5, -0.5, q;
  Mat3 h = Mat3::Zero();
  h.topLeftCorner<2, 2>() = se2_E_inv(th).transpose();
  h.topRightCorner<2, 1>() = j * z.head<2>();
  h(2, 2) = 1.0;
  return h;
}

/// First two rows of H(z): vzdot = Hbar(z) xi_e.
inline Eigen::Matrix<double, 2, 3> se2_chain_Hbar(const Vec3& z) {
  return se2_chain_H(z).topRows<2>();
}

/// d/dt beta given z and zdot (valid away from the z_x = 0 ridge).
inline double se2_beta_dot(const Vec3& z, const Vec3& zdot) {
  const Vec2 vz = z.head<2>();
  const double v2 = vz.squaredNorm();
  if (vz.norm() < kBetaFloor) return 0.0;
  return (vz.y() * zdot.x() - vz.x() * zdot.y()) / v2;
}

/// Planar-pose kinematic controller
///   xi_u(g_e) = (z_x, 0, theta_e + k_b beta(v_z)),
///   V(g_e)    = (k1/2) |z|^2 + (k2/2) beta^2(v_z),
/// with z = (log g_e)^vee = (v_z, theta_e).  Outputs satisfy the no-slip
/// algebra (vy component identically zero).  The critical set is at
/// theta_e = +/-pi, where the log map errors out.
struct Se2KinematicController {
  double k_b = 10.0;
  double k1 = 0.01;
  double k2 = 0.1;
  double basin_theta_margin = 0.01;  // basin realization: |theta_e| < pi - margin

  Se2KinematicController() = default;
  Se2KinematicController(double k_b_in, double k1_in, double k2_in)
      : k_b(k_b_in), k1(k1_in), k2(k2_in) {
    if (k_b <= 0.0 || k1 <= 0.0 || k2 <= 0.0) {
      throw std::invalid_argument("Se2KinematicController: gains must be positive");
    }
  }

  Vec3 xi_u(const PoseSE2& ge) const {
    const Vec3 z = se2_log(ge);
    return Vec3(z.x(), 0.0, z.z() + k_b * se2_beta(z.head<2>()));
  }

  double morse(const PoseSE2& ge) const {
    const Vec3 z = se2_log(ge);
    const double b = se2_beta(z.head<2>());
    return 0.5 * k1 * z.squaredNorm() + 0.5 * k2 * b * b;
  }

  /// Body covector of dV: k1 H^T(z) z + k2 beta grad(beta), so that
  /// d/dt V = <body_grad(g_e), xi_e>.  The beta term is defined as zero
  /// when v_z vanishes.
  Vec3 body_grad(const PoseSE2& ge) const {
    const Vec3 z = se2_log(ge);
    const Mat3 h = se2_chain_H(z);
    Vec3 g = k1 * (h.transpose() * z);
    const Vec2 vz = z.head<2>();
    if (vz.norm() >= kBetaFloor) {
      const double b = se2_beta(vz);
      const Vec2 dbeta_dvz = Vec2(vz.y(), -vz.x()) / vz.squaredNorm();
      g += k2 * b * (se2_chain_Hbar(z).transpose() * dbeta_dvz);
    }
    return g;
  }

  /// d/dt xi_u along gedot = ge xi_e^.
  Vec3 xi_u_dot(const PoseSE2& ge, const Vec3& xi_e) const {
    const Vec3 z = se2_log(ge);
    const Vec3 zdot = se2_chain_H(z) * xi_e;
    return Vec3(zdot.x(), 0.0, zdot.z() + k_b * se2_beta_dot(z, zdot));
  }

  bool near_critical(const PoseSE2& ge) const {
    return std::abs(ge.theta) >= std::numbers::pi - basin_theta_margin;
  }
  bool in_basin(const PoseSE2& ge) const { return !near_critical(ge); }
};

}  // namespace gsmc

#endif  // GSMC_KIN_SE2_CTRL_HPP_
