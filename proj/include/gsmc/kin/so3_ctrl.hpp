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

#ifndef GSMC_KIN_SO3_CTRL_HPP_
#define GSMC_KIN_SO3_CTRL_HPP_

#include <cmath>

#include "gsmc/lie/so3.hpp"

namespace gsmc {

/// Attitude kinematic controller: velocity law Omega_u(R) = (log R)^vee
/// paired with the trace-based Morse function V(R) = 2 - sqrt(1 + tr R).
/// V is zero only at the identity and tops out at 2 on the critical set
/// tr(R) = -1, where the log (and hence the controller) is undefined.
struct So3KinematicController {
  using Group = So3Group;

  /// Neighborhood-of-identity margin: the basin used for the exponential
  /// rate estimates is { V < 2 - basin_eps }.
  double basin_eps = 0.01;

  Vec3 xi_u(const Rotation3& Re) const { return so3_log(Re); }

  double morse(const Rotation3& Re) const {
    return 2.0 - std::sqrt(std::max(0.0, 1.0 + Re.trace()));
  }

  /// Body-frame covector of dV: psi(R) (R - R^T)^vee, so that
  /// d/dt V = <body_grad(R), Omega> along Rdot = R hat(Omega).
  Vec3 body_grad(const Rotation3& Re) const {
    const double tr = Re.trace();
    if (tr <= -1.0 + kAntipodalEps) {
      throw NearAntipodal("so3 body_grad: tr(R) at the critical set");
    }
    const double psi = 1.0 / (2.0 * std::sqrt(1.0 + tr));
    return psi * vee(Re.matrix() - Re.matrix().transpose());
  }

  /// d/dt xi_u along Rdot = R hat(omega_body).
  Vec3 xi_u_dot(const Rotation3& Re, const Vec3& omega_body) const {
    return so3_dlog_inv(so3_log(Re)) * omega_body;
  }

  bool near_critical(const Rotation3& Re) const {
    return morse(Re) >= 2.0 - basin_eps;
  }
  bool in_basin(const Rotation3& Re) const { return !near_critical(Re); }
};

}  // namespace gsmc

#endif  // GSMC_KIN_SO3_CTRL_HPP_
