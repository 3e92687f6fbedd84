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

#ifndef GSMC_DYN_UNICYCLE_HPP_
#define GSMC_DYN_UNICYCLE_HPP_

#include <Eigen/Cholesky>

#include "gsmc/dyn/reduced.hpp"
#include "gsmc/lie/se2.hpp"

namespace gsmc {

/// Differential-drive unicycle robot; defaults are the simulated plant.
struct UnicycleParams {
  double mu = 3.0;        // robot mass, kg
  double J_R = 0.025;     // robot inertia about the center of mass, kg m^2
  double J_sigma = 6e-5;  // wheel inertia about the pivot, kg m^2
  double rho = 0.05;      // wheel radius, m
  double d = 0.165;       // half wheel base, m
};

/// Constrained bundle system on SE(2) x T^2 under the no-slip condition.
/// The nonholonomic connection closes the kinematics, xi = -Abar sigmadot,
/// so the constrained momentum pbar = Ibar(xi + Abar sigmadot) vanishes
/// identically and the reduced dynamics is sigmaddot = fbar_u.
class UnicycleSystem {
 public:
  using Group = Se2Group;
  static constexpr int kShapeDim = 2;
  using State = ReducedState<Se2Group, 2>;
  using Deriv = ReducedDeriv<Se2Group, 2>;
  using ShapeVec = Vec2;
  using ConnMat = Eigen::Matrix<double, 3, 2>;
  using ConnPinv = Eigen::Matrix<double, 2, 3>;

  explicit UnicycleSystem(const UnicycleParams& prm) : prm_(prm) {
    if (prm.mu <= 0 || prm.J_R <= 0 || prm.J_sigma <= 0 || prm.rho <= 0 || prm.d <= 0) {
      throw std::invalid_argument("UnicycleSystem: parameters must be positive");
    }
    const double r2 = 0.5 * prm.rho;
    const double r2d = 0.5 * prm.rho / prm.d;
    Abar_ << -r2, -r2, 0.0, 0.0, -r2d, r2d;
    Abar_pinv_ << -1.0 / prm.rho, 0.0, -prm.d / prm.rho,
                  -1.0 / prm.rho, 0.0, prm.d / prm.rho;
    Ibar_ = Vec3(prm.mu, prm.mu, prm.J_R).asDiagonal();
    Mat2 M = prm.J_sigma * Mat2::Identity() + Abar_.transpose() * Ibar_ * Abar_;
    M = 0.5 * (M + M.transpose());
    Eigen::LLT<Mat2> llt(M);
    if (llt.info() != Eigen::Success) {
      throw SingularMass("UnicycleSystem: reduced mass matrix is not positive definite");
    }
    Mbar_ = M;
    Mbar_inv_ = llt.solve(Mat2::Identity());
  }

  const UnicycleParams& params() const { return prm_; }
  const ConnMat& conn() const { return Abar_; }        // Abar
  const ConnPinv& conn_pinv() const { return Abar_pinv_; }  // Abar^dagger
  const Mat3& locked_inertia() const { return Ibar_; }
  const Mat2& reduced_mass() const { return Mbar_; }
  const Mat2& reduced_mass_inv() const { return Mbar_inv_; }

  /// xi = -Abar sigmadot (+ Ibar^{-1} pbar, identically zero here).
  Vec3 body_velocity(const State& s) const {
    return -Abar_ * s.rdot + momentum_velocity(s);
  }

  Vec3 momentum_velocity(const State& s) const {
    return Vec3(s.p.x() / prm_.mu, s.p.y() / prm_.mu, s.p.z() / prm_.J_R);
  }
  Vec3 momentum_velocity_rate(const State& /*s*/) const { return Vec3::Zero(); }

  Vec3 momentum_rate(const State& /*s*/) const { return Vec3::Zero(); }

  Vec2 h_term(const State& /*s*/) const { return Vec2::Zero(); }

  Vec2 shape_potential_dV(const Vec2& /*sigma*/) const { return Vec2::Zero(); }

  /// |vy| of a body velocity; zero on the constraint distribution.
  double constraint_defect(const Vec3& xi) const { return std::abs(xi.y()); }

  Deriv rhs(const State& s, const Vec2& fbar_u) const { return constrained_rhs(*this, s, fbar_u); }

 private:
  UnicycleParams prm_;
  ConnMat Abar_;
  ConnPinv Abar_pinv_;
  Mat3 Ibar_;
  Mat2 Mbar_, Mbar_inv_;
};

inline UnicycleSystem unicycle_system(const UnicycleParams& prm) {
  return UnicycleSystem(prm);
}

/// Residuals of the three no-slip constraint equations, evaluated from the
/// spatial velocities (xdot, ydot, thetadot) and the wheel rates:
///   xdot cos(th) + ydot sin(th) - (rho/2)(s1dot + s2dot)
///   -xdot sin(th) + ydot cos(th)
///   thetadot - (rho/2d)(s1dot - s2dot)
inline Vec3 no_slip_residual(const UnicycleParams& prm, double theta, const Vec2& pdot,
                             double thetadot, const Vec2& sigmadot) {
  const double c = std::cos(theta), s = std::sin(theta);
  return Vec3(pdot.x() * c + pdot.y() * s - 0.5 * prm.rho * (sigmadot.x() + sigmadot.y()),
              -pdot.x() * s + pdot.y() * c,
              thetadot - 0.5 * prm.rho / prm.d * (sigmadot.x() - sigmadot.y()));
}

/// Same residual from a reduced state (spatial velocity via gdot = g xi^).
inline Vec3 no_slip_residual(const UnicycleSystem& sys, const UnicycleSystem::State& s) {
  const Vec3 xi = sys.body_velocity(s);
  const Vec2 pdot = s.g.rotation() * xi.head<2>();
  return no_slip_residual(sys.params(), s.g.theta, pdot, xi.z(), s.rdot);
}

}  // namespace gsmc

#endif  // GSMC_DYN_UNICYCLE_HPP_
