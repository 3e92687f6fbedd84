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

#ifndef GSMC_DYN_REDUCED_HPP_
#define GSMC_DYN_REDUCED_HPP_

#include <Eigen/Core>

#include "gsmc/errors.hpp"
#include "gsmc/lie/so3.hpp"

namespace gsmc {

/// State of a reduced mechanical system on a trivial bundle G x M:
/// pose g on the structure group, shape point r with velocity rdot, and the
/// body-frame generalized momentum p.  Systems whose connection closes the
/// kinematics (the unicycle) carry p = 0 throughout.
template <class Group, int N>
struct ReducedState {
  using ShapeVec = Eigen::Matrix<double, N, 1>;

  typename Group::Element g{};
  ShapeVec r = ShapeVec::Zero();
  ShapeVec rdot = ShapeVec::Zero();
  Vec3 p = Vec3::Zero();
};

template <class Group, int N>
struct ReducedDeriv {
  using ShapeVec = Eigen::Matrix<double, N, 1>;

  Vec3 xi = Vec3::Zero();  // body velocity driving gdot = g xi^
  ShapeVec rdot = ShapeVec::Zero();
  ShapeVec rddot = ShapeVec::Zero();
  Vec3 pdot = Vec3::Zero();
};

/// Shape/fiber split of the reduced motion equations for an unconstrained
/// invariant system:
///   rddot = M^{-1}( h/2 - dV ) + f_u
///   pdot  = ad*_xi p + tau_G
///   xi    = -A(r) rdot + I^{-1}(r) p
/// f_u is the control force as a shape vector.
template <class Sys>
typename Sys::Deriv unconstrained_rhs(const Sys& sys, const typename Sys::State& s,
                                      const typename Sys::ShapeVec& f_u) {
  typename Sys::Deriv d;
  d.xi = sys.body_velocity(s);
  d.rdot = s.rdot;
  d.rddot = sys.reduced_mass_inv() * (0.5 * sys.h_term(s) - sys.shape_potential_dV(s.r)) + f_u;
  d.pdot = sys.momentum_rate(s);
  return d;
}

/// Constrained counterpart.  The input state must satisfy the velocity
/// constraint; the reconstructed body velocity of the derivative then does
/// so by construction of the nonholonomic connection.
template <class Sys>
typename Sys::Deriv constrained_rhs(const Sys& sys, const typename Sys::State& s,
                                    const typename Sys::ShapeVec& fbar_u) {
  typename Sys::Deriv d;
  d.xi = sys.body_velocity(s);
  const double residual = sys.constraint_defect(d.xi);
  if (residual > 1e-9) {
    throw ConstraintViolation("constrained_rhs: state violates the velocity constraint by " +
                              std::to_string(residual));
  }
  d.rdot = s.rdot;
  d.rddot = sys.reduced_mass_inv() * (0.5 * sys.h_term(s) - sys.shape_potential_dV(s.r)) + fbar_u;
  d.pdot = sys.momentum_rate(s);
  return d;
}

}  // namespace gsmc

#endif  // GSMC_DYN_REDUCED_HPP_
