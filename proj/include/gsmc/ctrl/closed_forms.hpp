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

#ifndef GSMC_CTRL_CLOSED_FORMS_HPP_
#define GSMC_CTRL_CLOSED_FORMS_HPP_

// Self-contained transcriptions of the two per-system tracking controllers.
// They rebuild every intermediate (connection, mass matrix, chain matrices,
// gradients) from the raw parameters, deliberately sharing no assembly code
// with the generic laws in sliding.hpp: the test suites pin the generic
// path against these to 1e-10.

#include "gsmc/ctrl/sliding.hpp"
#include "gsmc/dyn/spacecraft.hpp"
#include "gsmc/dyn/unicycle.hpp"
#include "gsmc/kin/se2_ctrl.hpp"

namespace gsmc {

struct SpacecraftClosedForm {
  Vec3 f_u;
  Vec3 tau;
  Vec3 varsigma;
};

/// Reaction-wheel attitude tracking law:
///   w   = -J_phi^{-1}(J+J_phi) ( lambda Omega_u(R_e) - R_e^T Omega_d + (J+J_phi)^{-1} p )
///   f_u = -wdot - (1/2) M^{-1} h - k_s varsigma
///         + M^{-1} ( ((J+J_phi)^{-1} J_phi)^T psi(R_e) (R_e - R_e^T)^vee )
/// with varsigma = phidot + w, psi(R_e) = 1/(2 sqrt(1 + tr R_e)) and
/// h = -2 ((J+J_phi)^{-1} J_phi)^T pdot, pdot = -Omega^ p.
inline SpacecraftClosedForm spacecraft_tracking_force_ref(
    const SpacecraftParams& prm, const ReducedState<So3Group, 3>& s, const Rotation3& Rd,
    const Vec3& Omega_d, const Vec3& Omega_d_dot, const SlidingGains& k) {
  const Mat3 Jphi = prm.J_phi.asDiagonal();
  const Mat3 Jsum = prm.J + Jphi;
  const Mat3 Jsum_inv = Jsum.inverse();
  const Mat3 A = Jsum_inv * Jphi;
  const Mat3 A_inv = Jphi.inverse() * Jsum;
  const Mat3 M = Jphi - Jphi * Jsum_inv * Jphi;
  const Mat3 M_inv = M.inverse();

  const Rotation3 Re = Rd.inverse() * s.g;
  const Mat3 ReT = Re.matrix().transpose();
  const Vec3 Omega = -A * s.rdot + Jsum_inv * s.p;
  const Vec3 Omega_e = Omega - ReT * Omega_d;
  const Vec3 Omega_u = so3_log(Re);
  const Vec3 pdot = -hat(Omega) * s.p;

  const Vec3 w = -A_inv * (k.lambda * Omega_u - ReT * Omega_d + Jsum_inv * s.p);
  const Vec3 dlog = so3_dlog_inv(Omega_u) * Omega_e;
  const Vec3 d_ReT_Od = -hat(Omega_e) * (ReT * Omega_d) + ReT * Omega_d_dot;
  const Vec3 wdot = -A_inv * (k.lambda * dlog - d_ReT_Od + Jsum_inv * pdot);
  const Vec3 varsigma = s.rdot + w;

  const double psi = 1.0 / (2.0 * std::sqrt(1.0 + Re.trace()));
  const Vec3 h = -2.0 * A.transpose() * pdot;
  const Vec3 f_u = -wdot - 0.5 * M_inv * h - k.k_s * varsigma +
                   M_inv * (A.transpose() * (psi * vee(Re.matrix() - ReT)));
  return {f_u, M * f_u, varsigma};
}

struct UnicycleClosedForm {
  Vec2 f_u;
  Vec2 tau;
  Vec2 varsigma;
};

/// Nonholonomic tracking law in covector form:
///   tau = -Mbar (wbar_dot + k_s varsigma)
///         + Abar^T ( k1 H^T(z) z - k2 Hbar^T(z) (beta/|v_z|^2)^ v_z )
/// with wbar = -Abar+ (lambda xi_u(g_e) - xi_d) and varsigma = sigmadot + wbar.
/// The beta factor carries sign(z_x) on the z_x < 0 half-plane (odd branch).
inline UnicycleClosedForm unicycle_tracking_force_ref(
    const UnicycleParams& prm, const ReducedState<Se2Group, 2>& s, const PoseSE2& gd,
    const Vec3& xi_d, const Vec3& xi_d_dot, double k_b, double k1, double k2,
    const SlidingGains& k) {
  Eigen::Matrix<double, 3, 2> Abar;
  Abar << -0.5 * prm.rho, -0.5 * prm.rho, 0.0, 0.0, -0.5 * prm.rho / prm.d,
      0.5 * prm.rho / prm.d;
  Eigen::Matrix<double, 2, 3> Adag;
  Adag << -1.0 / prm.rho, 0.0, -prm.d / prm.rho, -1.0 / prm.rho, 0.0, prm.d / prm.rho;
  const Mat3 Ibar = Vec3(prm.mu, prm.mu, prm.J_R).asDiagonal();
  const Mat2 Mbar = prm.J_sigma * Mat2::Identity() + Abar.transpose() * Ibar * Abar;
  const Mat2 Mbar_inv = Mbar.inverse();

  const PoseSE2 ge = se2_compose(se2_inverse(gd), s.g);
  const Vec3 z = se2_log(ge);
  const Vec2 vz = z.head<2>();
  const double th = z.z();

  // E^{-T}(theta) and the (1/theta)(I - E^{-T}) column of H(z)
  const double a = se2_alpha(th);
  Mat2 EinvT;
  EinvT << a, -0.5 * th, 0.5 * th, a;
  const double q = std::abs(th) < kSmallAngle ? th / 12.0 + th * th * th / 720.0
                                              : (1.0 - a) / th;
  Mat2 Jq;
  Jq << q, 0.5, -0.5, q;
  Mat3 H = Mat3::Zero();
  H.topLeftCorner<2, 2>() = EinvT;
  H.topRightCorner<2, 1>() = Jq * vz;
  H(2, 2) = 1.0;
  const Eigen::Matrix<double, 2, 3> Hbar = H.topRows<2>();

  double beta = 0.0;
  const double v2 = vz.squaredNorm();
  if (vz.norm() >= kBetaFloor) {
    const double sgn = vz.x() >= 0.0 ? 1.0 : -1.0;
    beta = -std::atan2(sgn * vz.y(), sgn * vz.x());
  }
  const Vec3 xi_u(z.x(), 0.0, th + k_b * beta);

  const Vec3 xi = -Abar * s.rdot;
  const Vec3 xi_e = xi - se2_Ad(se2_inverse(ge)) * xi_d;

  const Vec2 wbar = -Adag * (k.lambda * xi_u - xi_d);
  const Vec2 varsigma = s.rdot + wbar;

  const Vec3 zdot = H * xi_e;
  double beta_dot = 0.0;
  if (vz.norm() >= kBetaFloor) {
    beta_dot = (vz.y() * zdot.x() - vz.x() * zdot.y()) / v2;
  }
  const Vec3 xi_u_dot(zdot.x(), 0.0, zdot.z() + k_b * beta_dot);
  const Vec2 wbar_dot = -Adag * (k.lambda * xi_u_dot - xi_d_dot);

  Vec3 grad = k1 * (H.transpose() * z);
  if (vz.norm() >= kBetaFloor) {
    Mat2 skew;  // (beta / |v_z|^2)^
    skew << 0.0, -beta / v2, beta / v2, 0.0;
    grad -= k2 * (Hbar.transpose() * (skew * vz));
  }

  const Vec2 tau = -Mbar * (wbar_dot + k.k_s * varsigma) + Abar.transpose() * grad;
  return {Mbar_inv * tau, tau, varsigma};
}

}  // namespace gsmc

#endif  // GSMC_CTRL_CLOSED_FORMS_HPP_
