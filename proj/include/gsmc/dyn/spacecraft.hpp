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

#ifndef GSMC_DYN_SPACECRAFT_HPP_
#define GSMC_DYN_SPACECRAFT_HPP_

#include <functional>

#include <Eigen/Cholesky>

#include "gsmc/dyn/reduced.hpp"
#include "gsmc/lie/so3.hpp"

namespace gsmc {

/// Rigid spacecraft with three reaction wheels on the body principal axes.
struct SpacecraftParams {
  Mat3 J = Mat3::Identity();       // spacecraft inertia, SPD
  Vec3 J_phi = Vec3::Ones();       // wheel inertias, positive diagonal

  /// Non-diagonal SPD inertia and distinct wheels; scale of a small
  /// satellite (kg m^2).
  static SpacecraftParams small_sat() {
    SpacecraftParams p;
    p.J << 0.0820, 0.0015, -0.0010,
           0.0015, 0.0845, 0.0005,
          -0.0010, 0.0005, 0.1377;
    p.J_phi = Vec3(3.5e-4, 4.0e-4, 4.5e-4);
    return p;
  }
};

/// Unconstrained bundle system on SO(3) x T^3.  The shape variables are
/// the wheel angles phi; I = J + J_phi, m = J_phi, and I A = J_phi are all
/// constant, so A = (J + J_phi)^{-1} J_phi with square inverse
/// A^{-1} = J_phi^{-1}(J + J_phi), and M = J_phi - J_phi (J+J_phi)^{-1} J_phi.
class SpacecraftSystem {
 public:
  using Group = So3Group;
  static constexpr int kShapeDim = 3;
  using State = ReducedState<So3Group, 3>;
  using Deriv = ReducedDeriv<So3Group, 3>;
  using ShapeVec = Vec3;

  explicit SpacecraftSystem(const SpacecraftParams& prm) : prm_(prm) {
    if ((prm.J - prm.J.transpose()).norm() > 1e-12) {
      throw std::invalid_argument("SpacecraftSystem: J must be symmetric");
    }
    if (Eigen::LLT<Mat3>(prm.J).info() != Eigen::Success) {
      throw SingularMass("SpacecraftSystem: J is not positive definite");
    }
    if ((prm.J_phi.array() <= 0.0).any()) {
      throw std::invalid_argument("SpacecraftSystem: wheel inertias must be positive");
    }
    const Mat3 Jphi = prm.J_phi.asDiagonal();
    I_ = prm.J + Jphi;
    I_inv_ = I_.inverse();
    A_ = I_inv_ * Jphi;
    A_pinv_ = Jphi.inverse() * I_;
    Mat3 M = Jphi - Jphi * I_inv_ * Jphi;
    M = 0.5 * (M + M.transpose());
    Eigen::LLT<Mat3> llt(M);
    if (llt.info() != Eigen::Success) {
      throw SingularMass("SpacecraftSystem: reduced mass matrix is not positive definite");
    }
    M_ = M;
    M_inv_ = llt.solve(Mat3::Identity());
  }

  const SpacecraftParams& params() const { return prm_; }
  const Mat3& locked_inertia() const { return I_; }
  const Mat3& locked_inertia_inv() const { return I_inv_; }
  const Mat3& conn() const { return A_; }        // A
  const Mat3& conn_pinv() const { return A_pinv_; }  // A^{-1} = A^dagger
  const Mat3& reduced_mass() const { return M_; }
  const Mat3& reduced_mass_inv() const { return M_inv_; }

  Vec3 body_velocity(const State& s) const { return -A_ * s.rdot + I_inv_ * s.p; }

  /// I^{-1} p and its time derivative, the momentum contributions to the
  /// sliding offset fields.
  Vec3 momentum_velocity(const State& s) const { return I_inv_ * s.p; }
  Vec3 momentum_velocity_rate(const State& s) const { return I_inv_ * momentum_rate(s); }

  Vec3 momentum_rate(const State& s) const {
    Vec3 pdot = so3_ad_star(body_velocity(s), s.p);  // = -Omega^ p
    if (tau_G) pdot += tau_G(s);
    return pdot;
  }

  /// Levi-Civita cross term on the shape space: h = -2 A^T pdot.
  Vec3 h_term(const State& s) const { return -2.0 * A_.transpose() * momentum_rate(s); }

  Vec3 shape_potential_dV(const Vec3& /*phi*/) const { return Vec3::Zero(); }

  Deriv rhs(const State& s, const Vec3& f_u) const { return unconstrained_rhs(*this, s, f_u); }

  /// Reduced kinetic energy 1/2 [Omega; phidot]^T G [Omega; phidot].
  double kinetic_energy(const State& s) const {
    const Vec3 omega = body_velocity(s);
    const Mat3 Jphi = prm_.J_phi.asDiagonal();
    return 0.5 * omega.dot(I_ * omega) + omega.dot(Jphi * s.rdot) +
           0.5 * s.rdot.dot(Jphi * s.rdot);
  }

  /// Momentum consistent with a prescribed body velocity: p = I(Omega + A phidot).
  Vec3 momentum_from_velocity(const Vec3& omega, const Vec3& phidot) const {
    return I_ * omega + I_ * A_ * phidot;
  }

  /// Optional external fiber torque (zero by default).
  std::function<Vec3(const State&)> tau_G;

 private:
  SpacecraftParams prm_;
  Mat3 I_, I_inv_, A_, A_pinv_, M_, M_inv_;
};

inline SpacecraftSystem spacecraft_system(const SpacecraftParams& prm) {
  return SpacecraftSystem(prm);
}

}  // namespace gsmc

#endif  // GSMC_DYN_SPACECRAFT_HPP_
