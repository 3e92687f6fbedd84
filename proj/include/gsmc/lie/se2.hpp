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

#ifndef GSMC_LIE_SE2_HPP_
#define GSMC_LIE_SE2_HPP_

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "gsmc/errors.hpp"
#include "gsmc/lie/so3.hpp"

namespace gsmc {

/// Wraps an angle to (-pi, pi].
inline double wrap_angle(double a) {
  const double r = std::remainder(a, 2.0 * std::numbers::pi);
  return r <= -std::numbers::pi ? r + 2.0 * std::numbers::pi : r;
}

/// Planar pose (p, R(theta)).  The angle is stored wrapped to (-pi, pi]
/// so that composition of angles is exact and drift-free.
///
/// Twists are Vec3 with layout (vx, vy, omega).
struct PoseSE2 {
  Vec2 p = Vec2::Zero();
  double theta = 0.0;

  PoseSE2() = default;
  PoseSE2(const Vec2& p_in, double theta_in) : p(p_in), theta(wrap_angle(theta_in)) {}
  PoseSE2(double x, double y, double theta_in) : p(x, y), theta(wrap_angle(theta_in)) {}

  static PoseSE2 Identity() { return PoseSE2(); }

  Mat2 rotation() const {
    const double c = std::cos(theta), s = std::sin(theta);
    Mat2 r;
    r << c, -s, s, c;
    return r;
  }

  /// Homogeneous 3x3 form; bottom row (0, 0, 1).
  Mat3 homogeneous() const {
    Mat3 m = Mat3::Identity();
    m.topLeftCorner<2, 2>() = rotation();
    m.topRightCorner<2, 1>() = p;
    return m;
  }
};

inline PoseSE2 se2_compose(const PoseSE2& g1, const PoseSE2& g2) {
  return PoseSE2(g1.rotation() * g2.p + g1.p, g1.theta + g2.theta);
}

inline PoseSE2 se2_inverse(const PoseSE2& g) {
  return PoseSE2(-(g.rotation().transpose() * g.p), -g.theta);
}

/// alpha(theta) = (theta/2) cot(theta/2), the scalar in E^{-1}.
inline double se2_alpha(double theta) {
  if (std::abs(theta) < kSmallAngle) {
    const double t2 = theta * theta;
    return 1.0 - t2 / 12.0 - t2 * t2 / 720.0;
  }
  const double h = 0.5 * theta;
  return h * std::cos(h) / std::sin(h);
}

inline Mat2 se2_E_inv(double theta) {
  const double a = se2_alpha(theta);
  Mat2 m;
  m << a, 0.5 * theta, -0.5 * theta, a;
  return m;
}

inline Mat2 se2_E(double theta) {
  double s, c;  // sin(theta)/theta and (1 - cos(theta))/theta
  if (std::abs(theta) < kSmallAngle) {
    const double t2 = theta * theta;
    s = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    c = 0.5 * theta - theta * t2 / 24.0;
  } else {
    s = std::sin(theta) / theta;
    c = (1.0 - std::cos(theta)) / theta;
  }
  Mat2 m;
  m << s, -c, c, s;
  return m;
}

inline PoseSE2 se2_exp(const Vec3& z) {
  return PoseSE2(se2_E(z.z()) * z.head<2>(), z.z());
}

/// (log g)^vee = (E^{-1}(theta) p, theta).  Throws NearAntipodal when
/// |theta| is within kAntipodalEps of pi (tr of the homogeneous form at -1).
inline Vec3 se2_log(const PoseSE2& g) {
  if (std::abs(g.theta) >= std::numbers::pi - kAntipodalEps) {
    throw NearAntipodal("se2_log: |theta| = " + std::to_string(std::abs(g.theta)) +
                        " is within " + std::to_string(kAntipodalEps) + " of pi");
  }
  Vec3 z;
  z.head<2>() = se2_E_inv(g.theta) * g.p;
  z.z() = g.theta;
  return z;
}

/// Matrix of Ad_g on twists (vx, vy, omega).
inline Mat3 se2_Ad(const PoseSE2& g) {
  Mat3 m = Mat3::Identity();
  m.topLeftCorner<2, 2>() = g.rotation();
  m(0, 2) = g.p.y();
  m(1, 2) = -g.p.x();
  return m;
}

/// ad_{x1} x2 = (omega1^ v2 - omega2^ v1, 0).
inline Vec3 se2_ad(const Vec3& x1, const Vec3& x2) {
  return Vec3(-x1.z() * x2.y() + x2.z() * x1.y(),
              x1.z() * x2.x() - x2.z() * x1.x(), 0.0);
}

struct Se2Group {
  using Element = PoseSE2;
  static Element identity() { return PoseSE2::Identity(); }
  static Element compose(const Element& a, const Element& b) { return se2_compose(a, b); }
  static Element inverse(const Element& a) { return se2_inverse(a); }
  static Element exp(const Vec3& z) { return se2_exp(z); }
  static Vec3 log(const Element& g) { return se2_log(g); }
  static Mat3 Ad(const Element& g) { return se2_Ad(g); }
  static Vec3 ad(const Vec3& a, const Vec3& b) { return se2_ad(a, b); }
  static Element renormalize(const Element& g) { return g; }
};

}  // namespace gsmc

#endif  // GSMC_LIE_SE2_HPP_
