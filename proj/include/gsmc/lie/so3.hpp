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

#ifndef GSMC_LIE_SO3_HPP_
#define GSMC_LIE_SO3_HPP_

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gsmc/errors.hpp"

namespace gsmc {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// Closed forms switch to series below this angle, where they are 0/0.
inline constexpr double kSmallAngle = 1e-4;
/// Hard-error margin around the antipodal set of the log maps.
inline constexpr double kAntipodalEps = 1e-8;

inline Mat3 hat(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
      -w.y(), w.x(), 0.0;
  return m;
}

inline Vec3 vee(const Mat3& m) { return Vec3(m(2, 1), m(0, 2), m(1, 0)); }

/// Rotation matrix with its SO(3) invariants enforced at the boundaries:
/// checked construction from raw matrices, orthonormal-by-construction
/// everywhere else, and an explicit Gram-Schmidt repair for integrators.
class Rotation3 {
 public:
  Rotation3() : m_(Mat3::Identity()) {}

  static Rotation3 Identity() { return Rotation3(); }

  /// Validates orthonormality and det = +1 to 1e-9.
  static Rotation3 from_matrix(const Mat3& m) {
    const double ortho = (m.transpose() * m - Mat3::Identity()).norm();
    const double det = m.determinant();
    if (ortho > 1e-9 || std::abs(det - 1.0) > 1e-9) {
      throw std::invalid_argument("Rotation3: matrix is not in SO(3) (|R^T R - I| = " +
                                  std::to_string(ortho) + ", det = " + std::to_string(det) + ")");
    }
    return Rotation3(m, Unchecked{});
  }

  const Mat3& matrix() const { return m_; }
  double trace() const { return m_.trace(); }

  Rotation3 inverse() const { return Rotation3(m_.transpose(), Unchecked{}); }

  Rotation3 operator*(const Rotation3& rhs) const {
    return Rotation3(m_ * rhs.m_, Unchecked{});
  }

  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  /// One Gram-Schmidt pass over the columns; third column from the cross
  /// product so det stays +1.
  Rotation3 renormalized() const {
    const Vec3 c0 = m_.col(0).normalized();
    const Vec3 c1 = (m_.col(1) - c0.dot(m_.col(1)) * c0).normalized();
    const Vec3 c2 = c0.cross(c1);
    Mat3 out;
    out.col(0) = c0;
    out.col(1) = c1;
    out.col(2) = c2;
    return Rotation3(out, Unchecked{});
  }

 private:
  struct Unchecked {};
  Rotation3(const Mat3& m, Unchecked) : m_(m) {}
  friend Rotation3 so3_exp(const Vec3&);

  Mat3 m_;
};

/// Rodrigues formula; total on all of so(3).
inline Rotation3 so3_exp(const Vec3& w) {
  const double th = w.norm();
  const Mat3 W = hat(w);
  double a, b;  // R = I + a W + b W^2
  if (th < kSmallAngle) {
    const double t2 = th * th;
    a = 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    b = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
  } else {
    a = std::sin(th) / th;
    b = (1.0 - std::cos(th)) / (th * th);
  }
  return Rotation3(Mat3(Mat3::Identity() + a * W + b * (W * W)), Rotation3::Unchecked{});
}

/// (log R)^vee with the rotation angle in [0, pi).  Throws NearAntipodal on
/// the critical set tr(R) <= -1 + kAntipodalEps.
inline Vec3 so3_log(const Rotation3& R) {
  const double tr = R.trace();
  if (tr <= -1.0 + kAntipodalEps) {
    throw NearAntipodal("so3_log: tr(R) = " + std::to_string(tr) + " is within " +
                        std::to_string(kAntipodalEps) + " of the antipodal set");
  }
  const double c = std::clamp(0.5 * (tr - 1.0), -1.0, 1.0);
  const double th = std::acos(c);
  const Vec3 skew = vee(R.matrix() - R.matrix().transpose());  // = 2 sin(th) * axis
  if (th < kSmallAngle) {
    // th / (2 sin th) = 1/2 + th^2/12 + 7 th^4/720 + ...
    const double t2 = th * th;
    return (0.5 + t2 / 12.0 + 7.0 * t2 * t2 / 720.0) * skew;
  }
  return (th / (2.0 * std::sin(th))) * skew;
}

inline Vec3 so3_ad(const Vec3& a, const Vec3& b) { return a.cross(b); }

/// Coadjoint: <ad*_xi p; zeta> = <p; xi x zeta>, so ad*_xi p = p x xi.
inline Vec3 so3_ad_star(const Vec3& xi, const Vec3& p) { return p.cross(xi); }

/// Inverse right Jacobian of the exponential map: for Rdot = R hat(omega)
/// and u = (log R)^vee, udot = so3_dlog_inv(u) * omega.
inline Mat3 so3_dlog_inv(const Vec3& u) {
  const double th = u.norm();
  const Mat3 U = hat(u);
  double kappa;
  if (th < kSmallAngle) {
    kappa = 1.0 / 12.0 + th * th / 720.0;
  } else {
    kappa = 1.0 / (th * th) - (1.0 + std::cos(th)) / (2.0 * th * std::sin(th));
  }
  return Mat3::Identity() + 0.5 * U + kappa * (U * U);
}

/// Uniform group interface used by the templated dynamics and control laws.
/// Twists are plain Vec3 (angular velocity components).
struct So3Group {
  using Element = Rotation3;
  static Element identity() { return Rotation3::Identity(); }
  static Element compose(const Element& a, const Element& b) { return a * b; }
  static Element inverse(const Element& a) { return a.inverse(); }
  static Element exp(const Vec3& w) { return so3_exp(w); }
  static Vec3 log(const Element& g) { return so3_log(g); }
  static Mat3 Ad(const Element& g) { return g.matrix(); }
  static Vec3 ad(const Vec3& a, const Vec3& b) { return a.cross(b); }
  static Element renormalize(const Element& g) { return g.renormalized(); }
};

}  // namespace gsmc

#endif  // GSMC_LIE_SO3_HPP_
