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

#ifndef GSMC_CTRL_SLIDING_HPP_
#define GSMC_CTRL_SLIDING_HPP_

#include <stdexcept>

#include "gsmc/ctrl/desired.hpp"
#include "gsmc/dyn/reduced.hpp"

namespace gsmc {

struct SlidingGains {
  double lambda = 1.0;  // sliding-subgroup gain
  double k_s = 1.0;     // reaching gain, 1/s

  SlidingGains() = default;
  SlidingGains(double lambda_in, double k_s_in) : lambda(lambda_in), k_s(k_s_in) {
    if (lambda <= 0.0 || k_s <= 0.0) {
      throw std::invalid_argument("SlidingGains: lambda and k_s must be positive");
    }
  }
};

/// How the covariant derivative of the sliding offset field is realized.
/// Both worked systems have constant connection and inertia, so the
/// analytic chain rule is exact; the finite-difference fallback advances
/// two probe states consistently with the reduced dynamics and is the
/// lower-accuracy generic route.
enum class WDotMode { analytic, finite_difference };

template <class Sys>
struct ForceResult {
  typename Sys::ShapeVec f_u;      // control force, shape vector
  typename Sys::ShapeVec tau;      // actuator torques, M f_u
  typename Sys::ShapeVec sliding;  // sliding vector at the evaluated state
};

// ---------------------------------------------------------------------------
// Regulation.  One form serves both the unconstrained and the constrained
// systems: the offset field is v = -A+(lambda xi_u(g) + I^{-1} p) and the
// sliding vector s = rdot + v, which equals -A+(xi + lambda xi_u(g)).

template <class Sys, class Ctrl>
typename Sys::ShapeVec sliding_var_regulation(const Sys& sys, const Ctrl& ctrl,
                                              const typename Sys::State& s,
                                              const SlidingGains& k) {
  const typename Sys::ShapeVec v =
      -sys.conn_pinv() * (k.lambda * ctrl.xi_u(s.g) + sys.momentum_velocity(s));
  return s.rdot + v;
}

template <class Sys, class Ctrl>
ForceResult<Sys> regulation_force(const Sys& sys, const Ctrl& ctrl,
                                  const typename Sys::State& s, const SlidingGains& k) {
  const Vec3 xi = sys.body_velocity(s);
  const typename Sys::ShapeVec sl = sliding_var_regulation(sys, ctrl, s, k);
  const Vec3 xu_dot = ctrl.xi_u_dot(s.g, xi);
  const typename Sys::ShapeVec vdot =
      -sys.conn_pinv() * (k.lambda * xu_dot + sys.momentum_velocity_rate(s));
  const typename Sys::ShapeVec f_u =
      -vdot - sys.reduced_mass_inv() * (0.5 * sys.h_term(s) - sys.shape_potential_dV(s.r)) -
      k.k_s * sl + sys.reduced_mass_inv() * (sys.conn().transpose() * ctrl.body_grad(s.g));
  return {f_u, sys.reduced_mass() * f_u, sl};
}

// ---------------------------------------------------------------------------
// Tracking on the unconstrained system.  Left error g_e = g_d^{-1} g, body
// velocity error xi_e = xi - Ad_{g_e^{-1}} xi_d, offset field
//   w = -A+( lambda xi_u(g_e) - Ad_{g_e^{-1}} xi_d + I^{-1} p ).

template <class Sys, class Ctrl>
typename Sys::ShapeVec tracking_var(const Sys& sys, const Ctrl& ctrl,
                                    const typename Sys::State& s,
                                    const DesiredTrajectory<typename Sys::Group>& des,
                                    double t, const SlidingGains& k) {
  using Group = typename Sys::Group;
  const auto ge = Group::compose(Group::inverse(des.pose(t)), s.g);
  const Vec3 ad_xid = Group::Ad(Group::inverse(ge)) * des.xi(t);
  const typename Sys::ShapeVec w =
      -sys.conn_pinv() * (k.lambda * ctrl.xi_u(ge) - ad_xid + sys.momentum_velocity(s));
  return s.rdot + w;
}

template <class Sys, class Ctrl>
ForceResult<Sys> tracking_force(const Sys& sys, const Ctrl& ctrl,
                                const typename Sys::State& s,
                                const DesiredTrajectory<typename Sys::Group>& des, double t,
                                const SlidingGains& k,
                                WDotMode mode = WDotMode::analytic) {
  using Group = typename Sys::Group;
  using ShapeVec = typename Sys::ShapeVec;

  const auto gd = des.pose(t);
  const Vec3 xid = des.xi(t);
  const auto ge = Group::compose(Group::inverse(gd), s.g);
  const Vec3 xi = sys.body_velocity(s);
  const Mat3 ad_inv = Group::Ad(Group::inverse(ge));
  const Vec3 xi_e = xi - ad_inv * xid;
  const Vec3 xu = ctrl.xi_u(ge);

  const ShapeVec w =
      -sys.conn_pinv() * (k.lambda * xu - ad_inv * xid + sys.momentum_velocity(s));
  const ShapeVec varsigma = s.rdot + w;

  ShapeVec wdot;
  if (mode == WDotMode::analytic) {
    // d/dt (Ad_{g_e^{-1}} xi_d) = -ad_{xi_e}(Ad_{g_e^{-1}} xi_d) + Ad_{g_e^{-1}} xi_d_dot
    const Vec3 d_ad_xid = -Group::ad(xi_e, ad_inv * xid) + ad_inv * des.xi_dot(t);
    const Vec3 xu_dot = ctrl.xi_u_dot(ge, xi_e);
    wdot = -sys.conn_pinv() *
           (k.lambda * xu_dot - d_ad_xid + sys.momentum_velocity_rate(s));
  } else {
    const double dp = 1e-6;
    auto w_probe = [&](double dt) {
      const auto ge_p = Group::compose(ge, Group::exp(dt * xi_e));
      typename Sys::State sp = s;
      sp.r = s.r + dt * s.rdot;
      sp.p = s.p + dt * sys.momentum_rate(s);
      const Mat3 ad_inv_p = Group::Ad(Group::inverse(ge_p));
      return ShapeVec(-sys.conn_pinv() * (k.lambda * ctrl.xi_u(ge_p) -
                                          ad_inv_p * des.xi(t + dt) +
                                          sys.momentum_velocity(sp)));
    };
    wdot = (w_probe(dp) - w_probe(-dp)) / (2.0 * dp);
  }

  const ShapeVec f_u =
      -wdot - sys.reduced_mass_inv() * (0.5 * sys.h_term(s) - sys.shape_potential_dV(s.r)) -
      k.k_s * varsigma + sys.reduced_mass_inv() * (sys.conn().transpose() * ctrl.body_grad(ge));
  return {f_u, sys.reduced_mass() * f_u, varsigma};
}

// ---------------------------------------------------------------------------
// Tracking on the constrained system.  The velocity error
// xi_e = xi - Ad_{g_e^{-1}} xi_d generally leaves the constraint
// distribution, so the offset field uses the projected error xi - xi_d:
//   wbar = -Abar+( lambda xi_u(g_e) - xi_d + Ibar^{-1} pbar ).
// The error kinematics g_e dot = g_e xi_e^ still carries the true xi_e.

template <class Sys, class Ctrl>
typename Sys::ShapeVec constrained_tracking_var(
    const Sys& sys, const Ctrl& ctrl, const typename Sys::State& s,
    const DesiredTrajectory<typename Sys::Group>& des, double t, const SlidingGains& k) {
  using Group = typename Sys::Group;
  const auto ge = Group::compose(Group::inverse(des.pose(t)), s.g);
  const typename Sys::ShapeVec w =
      -sys.conn_pinv() * (k.lambda * ctrl.xi_u(ge) - des.xi(t) + sys.momentum_velocity(s));
  return s.rdot + w;
}

template <class Sys, class Ctrl>
ForceResult<Sys> constrained_tracking_force(const Sys& sys, const Ctrl& ctrl,
                                            const typename Sys::State& s,
                                            const DesiredTrajectory<typename Sys::Group>& des,
                                            double t, const SlidingGains& k,
                                            WDotMode mode = WDotMode::analytic) {
  using Group = typename Sys::Group;
  using ShapeVec = typename Sys::ShapeVec;

  const auto gd = des.pose(t);
  const Vec3 xid = des.xi(t);
  const auto ge = Group::compose(Group::inverse(gd), s.g);
  const Vec3 xi = sys.body_velocity(s);
  const Vec3 xi_e = xi - Group::Ad(Group::inverse(ge)) * xid;
  const Vec3 xu = ctrl.xi_u(ge);

  const ShapeVec w = -sys.conn_pinv() * (k.lambda * xu - xid + sys.momentum_velocity(s));
  const ShapeVec varsigma = s.rdot + w;

  ShapeVec wdot;
  if (mode == WDotMode::analytic) {
    const Vec3 xu_dot = ctrl.xi_u_dot(ge, xi_e);
    wdot = -sys.conn_pinv() *
           (k.lambda * xu_dot - des.xi_dot(t) + sys.momentum_velocity_rate(s));
  } else {
    const double dp = 1e-6;
    auto w_probe = [&](double dt) {
      const auto ge_p = Group::compose(ge, Group::exp(dt * xi_e));
      typename Sys::State sp = s;
      sp.r = s.r + dt * s.rdot;
      sp.p = s.p + dt * sys.momentum_rate(s);
      return ShapeVec(-sys.conn_pinv() * (k.lambda * ctrl.xi_u(ge_p) - des.xi(t + dt) +
                                          sys.momentum_velocity(sp)));
    };
    wdot = (w_probe(dp) - w_probe(-dp)) / (2.0 * dp);
  }

  const ShapeVec f_u =
      -wdot - sys.reduced_mass_inv() * (0.5 * sys.h_term(s) - sys.shape_potential_dV(s.r)) -
      k.k_s * varsigma + sys.reduced_mass_inv() * (sys.conn().transpose() * ctrl.body_grad(ge));
  return {f_u, sys.reduced_mass() * f_u, varsigma};
}

// ---------------------------------------------------------------------------
// Diagnostics: the Lyapunov value W = V_G(g_e) + (1/2) M(s, s) of the
// matching law, and membership of the sliding subgroup at tolerance 1e-6.

template <class Sys>
struct SlidingDiagnostics {
  typename Sys::ShapeVec sliding;
  double lyapunov_W = 0.0;
  double morse = 0.0;
  double err_xi = 0.0;
  bool on_subgroup = false;
};

template <class Sys, class Ctrl>
SlidingDiagnostics<Sys> lyapunov_value(const Sys& sys, const Ctrl& ctrl,
                                       const typename Sys::State& s,
                                       const DesiredTrajectory<typename Sys::Group>& des,
                                       double t, const SlidingGains& k) {
  using Group = typename Sys::Group;
  const auto ge = Group::compose(Group::inverse(des.pose(t)), s.g);
  const Vec3 xi_e = sys.body_velocity(s) - Group::Ad(Group::inverse(ge)) * des.xi(t);
  SlidingDiagnostics<Sys> diag;
  diag.sliding = tracking_var(sys, ctrl, s, des, t, k);
  diag.morse = ctrl.morse(ge);
  diag.lyapunov_W = diag.morse + 0.5 * diag.sliding.dot(sys.reduced_mass() * diag.sliding);
  diag.err_xi = xi_e.norm();
  diag.on_subgroup = (xi_e + k.lambda * ctrl.xi_u(ge)).norm() < 1e-6;
  return diag;
}

template <class Sys, class Ctrl>
SlidingDiagnostics<Sys> constrained_lyapunov_value(
    const Sys& sys, const Ctrl& ctrl, const typename Sys::State& s,
    const DesiredTrajectory<typename Sys::Group>& des, double t, const SlidingGains& k) {
  using Group = typename Sys::Group;
  const auto ge = Group::compose(Group::inverse(des.pose(t)), s.g);
  const Vec3 xi = sys.body_velocity(s);
  SlidingDiagnostics<Sys> diag;
  diag.sliding = constrained_tracking_var(sys, ctrl, s, des, t, k);
  diag.morse = ctrl.morse(ge);
  diag.lyapunov_W = diag.morse + 0.5 * diag.sliding.dot(sys.reduced_mass() * diag.sliding);
  diag.err_xi = (xi - Group::Ad(Group::inverse(ge)) * des.xi(t)).norm();
  diag.on_subgroup = ((xi - des.xi(t)) + k.lambda * ctrl.xi_u(ge)).norm() < 1e-6;
  return diag;
}

}  // namespace gsmc

#endif  // GSMC_CTRL_SLIDING_HPP_
