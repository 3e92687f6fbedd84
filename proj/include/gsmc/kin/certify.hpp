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

#ifndef GSMC_KIN_CERTIFY_HPP_
#define GSMC_KIN_CERTIFY_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <vector>

#include "gsmc/kin/se2_ctrl.hpp"
#include "gsmc/kin/so3_ctrl.hpp"
#include "gsmc/lie/metric.hpp"

namespace gsmc {

// ---------------------------------------------------------------------------
// Seeded samplers.  All certification runs are reproducible given the seed.

struct So3SampleDomain {
  double theta_max = std::numbers::pi - 0.05;
};

struct Se2SampleDomain {
  double theta_max = std::numbers::pi - 0.05;
  double r_min = 0.01;
  double r_max = 1.5;
};

inline Rotation3 sample_rotation(std::mt19937_64& rng, const So3SampleDomain& dom) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> ang(-dom.theta_max, dom.theta_max);
  Vec3 axis(gauss(rng), gauss(rng), gauss(rng));
  while (axis.norm() < 1e-6) axis = Vec3(gauss(rng), gauss(rng), gauss(rng));
  return so3_exp(ang(rng) * axis.normalized());
}

inline PoseSE2 sample_pose(std::mt19937_64& rng, const Se2SampleDomain& dom) {
  std::uniform_real_distribution<double> ang(-dom.theta_max, dom.theta_max);
  std::uniform_real_distribution<double> dir(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> rad(dom.r_min, dom.r_max);
  const double phi = dir(rng);
  const double r = rad(rng);
  return PoseSE2(r * std::cos(phi), r * std::sin(phi), ang(rng));
}

// ---------------------------------------------------------------------------
// Definition-1 battery: property (i) exactly, (ii) at 1e-10, (iii) strict
// descent with violations recorded (not thrown), (iv) the best exponential
// rate y such that <dV; -g xi_u> <= -y V over basin samples.  Also records
// sampled estimates of the Morse quadratic-growth constants b1, b2.

struct Definition1Report {
  bool prop_i_ok = false;
  bool prop_ii_ok = false;
  double prop_ii_max_defect = 0.0;
  /// Inversion defect of xi_u excluding the heading-correction beta term.
  /// For SE(2) the printed beta is even in v_z, so the full property (ii)
  /// fails by exactly 2 k_b |beta| while the remaining components are odd;
  /// this field isolates that.
  double prop_ii_nonbeta_max_defect = 0.0;
  int prop_iii_violations = 0;
  double prop_iv_rate_estimate = 0.0;
  int samples = 0;
  double b1_estimate = 0.0;
  double b2_estimate = 0.0;

  struct Violation {
    int index;
    double angle;
    double lyapunov;
    double pairing;
  };
  std::vector<Violation> violations;

  bool all_ok() const {
    return prop_i_ok && prop_ii_ok && prop_iii_violations == 0 &&
           prop_iv_rate_estimate > 0.0;
  }

  void write_summary(std::ostream& os, const std::string& name) const {
    os << "definition-1 [" << name << "] over " << samples << " samples:\n"
       << "  (i)   xi_u(e) = 0: " << (prop_i_ok ? "ok" : "FAIL") << "\n"
       << "  (ii)  xi_u(g^-1) = -xi_u(g): " << (prop_ii_ok ? "ok" : "FAIL")
       << " (max defect " << prop_ii_max_defect << ", excluding beta term "
       << prop_ii_nonbeta_max_defect << ")\n"
       << "  (iii) descent violations: " << prop_iii_violations << "\n"
       << "  (iv)  rate estimate y >= " << prop_iv_rate_estimate << "\n"
       << "  Morse growth estimates b1 = " << b1_estimate << ", b2 = " << b2_estimate
       << "\n";
  }

  void write_violations_csv(std::ostream& os) const {
    os << "index,angle,lyapunov,pairing\n";
    for (const auto& v : violations) {
      os << v.index << ',' << v.angle << ',' << v.lyapunov << ',' << v.pairing << '\n';
    }
  }
};

namespace detail {

template <class Ctrl, class Element, class SampleFn, class InvertFn, class AngleFn,
          class BasinFn, class NonBetaFn>
Definition1Report check_definition1_impl(const Ctrl& ctrl, const Element& identity,
                                         SampleFn&& sample, InvertFn&& invert,
                                         AngleFn&& angle_of, BasinFn&& in_basin,
                                         NonBetaFn&& nonbeta_defect, int n,
                                         const WeightedMetric& metric) {
  Definition1Report rep;
  rep.samples = n;
  rep.prop_i_ok = ctrl.xi_u(identity).isZero(0.0);

  double max_def = 0.0;
  double max_nonbeta = 0.0;
  double y_best = std::numeric_limits<double>::infinity();
  double b1 = std::numeric_limits<double>::infinity();
  double b2 = 0.0;
  bool basin_seen = false;

  for (int i = 0; i < n; ++i) {
    const Element g = sample();
    const Vec3 xu = ctrl.xi_u(g);
    const Vec3 xu_inv = ctrl.xi_u(invert(g));
    max_def = std::max(max_def, (xu_inv + xu).norm());
    max_nonbeta = std::max(max_nonbeta, nonbeta_defect(g, xu, xu_inv));

    const double v = ctrl.morse(g);
    const Vec3 grad = ctrl.body_grad(g);
    const double pairing = grad.dot(-xu);
    if (v > 1e-15 && pairing >= 0.0) {
      ++rep.prop_iii_violations;
      if (rep.violations.size() < 1000) {
        rep.violations.push_back({i, angle_of(g), v, pairing});
      }
    }
    if (in_basin(g) && v > 1e-12) {
      basin_seen = true;
      y_best = std::min(y_best, -pairing / v);
      const double dv = metric.covector_norm(grad);
      if (dv > 1e-12) {
        const double ratio = v / (dv * dv);
        b1 = std::min(b1, ratio);
        b2 = std::max(b2, ratio);
      }
    }
  }
  rep.prop_ii_max_defect = max_def;
  rep.prop_ii_nonbeta_max_defect = max_nonbeta;
  rep.prop_ii_ok = max_def < 1e-10;
  rep.prop_iv_rate_estimate = basin_seen ? std::max(0.0, y_best) : 0.0;
  rep.b1_estimate = basin_seen ? b1 : 0.0;
  rep.b2_estimate = b2;
  return rep;
}

}  // namespace detail

inline Definition1Report check_definition1(const So3KinematicController& ctrl,
                                           const So3SampleDomain& dom, int n,
                                           std::uint64_t seed,
                                           const WeightedMetric& metric) {
  std::mt19937_64 rng(seed);
  return detail::check_definition1_impl(
      ctrl, Rotation3::Identity(), [&] { return sample_rotation(rng, dom); },
      [](const Rotation3& g) { return g.inverse(); },
      [](const Rotation3& g) {
        return std::acos(std::clamp(0.5 * (g.trace() - 1.0), -1.0, 1.0));
      },
      [&](const Rotation3& g) { return ctrl.in_basin(g); },
      [](const Rotation3&, const Vec3& xu, const Vec3& xu_inv) {
        return (xu_inv + xu).norm();
      },
      n, metric);
}

inline Definition1Report check_definition1(const Se2KinematicController& ctrl,
                                           const Se2SampleDomain& dom, int n,
                                           std::uint64_t seed,
                                           const WeightedMetric& metric) {
  std::mt19937_64 rng(seed);
  return detail::check_definition1_impl(
      ctrl, PoseSE2::Identity(), [&] { return sample_pose(rng, dom); },
      [](const PoseSE2& g) { return se2_inverse(g); },
      [](const PoseSE2& g) { return g.theta; },
      [&](const PoseSE2& g) { return ctrl.in_basin(g); },
      [](const PoseSE2& g, const Vec3& xu, const Vec3& xu_inv) {
        // strip the k_b beta parts: the omega components reduce to
        // theta(g^{-1}) + theta(g)
        Vec3 d = xu_inv + xu;
        d.z() = wrap_angle(se2_inverse(g).theta + g.theta);
        return d.norm();
      },
      n, metric);
}

// ---------------------------------------------------------------------------
// Morse-domination condition V(g) >= gamma |I - Ad(g^{-1})|_F^2 over a
// sampled neighborhood of the identity.

struct Assumption3Report {
  bool ok = false;
  double min_ratio = std::numeric_limits<double>::infinity();
  int samples = 0;
  int violations = 0;
};

inline Assumption3Report check_assumption3(const Se2KinematicController& ctrl,
                                           double gamma, const Se2SampleDomain& dom,
                                           int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Assumption3Report rep;
  rep.samples = n;
  for (int i = 0; i < n; ++i) {
    const PoseSE2 g = sample_pose(rng, dom);
    const double d2 = (Mat3::Identity() - se2_Ad(se2_inverse(g))).squaredNorm();
    if (d2 < 1e-18) continue;  // identity samples are vacuous
    const double v = ctrl.morse(g);
    rep.min_ratio = std::min(rep.min_ratio, v / d2);
    if (v < gamma * d2) ++rep.violations;
  }
  rep.ok = rep.violations == 0;
  return rep;
}

// ---------------------------------------------------------------------------
// Gain feasibility via the Q2/Q3 matrices of the descent decomposition
//   <dV; -g xi_u> = -k1 v_z^T Q2 v_z - k1 theta^2 - k2 v_z^T Q3 v_z,
// evaluated over a grid of (theta, beta, |v_z|).  Feasible iff
//   gamma_1 = min{ k2 lmin(Q3) - k1 lmax(Q2), k1 } > 0 at every grid point.

inline Mat2 se2_Q2(double k_b, double theta, double beta, double vnorm) {
  const double a = se2_alpha(theta);
  const double q = std::abs(theta) < kSmallAngle ? theta / 12.0 : (1.0 - a) / theta;
  const double shared = k_b * beta * theta / (vnorm * vnorm);
  const double phi1 = 1.0 + k_b * beta * q + shared;
  const double phi2 = (theta + k_b * beta) * q + shared;
  Mat2 m;
  m << phi1, 0.25 * theta, 0.25 * theta, phi2;
  return m;
}

inline Mat2 se2_Q3(double k_b, double theta, double beta, double vnorm) {
  const double a = se2_alpha(theta);
  const double s = beta / (2.0 * vnorm * vnorm);
  Mat2 m;
  m << s * k_b * beta, s * a, s * a, s * (theta + k_b * beta);
  return m;
}

/// Closed-form eigenvalue extremes of a symmetric 2x2 matrix.
inline std::pair<double, double> sym2_eigs(const Mat2& m) {
  const double mean = 0.5 * (m(0, 0) + m(1, 1));
  const double disc = std::hypot(0.5 * (m(0, 0) - m(1, 1)), m(0, 1));
  return {mean - disc, mean + disc};
}

struct GainGrid {
  std::vector<double> theta;
  std::vector<double> beta;
  std::vector<double> vnorm;

  /// Default certification grid: a neighborhood of the identity, which is
  /// where the exponential-rate property lives.  |beta| is kept >= 0.3
  /// (Q3 loses positive definiteness for sign-opposed (theta, beta) with
  /// |beta| << |theta|/k_b), |theta| <= 0.6 and |v_z| <= 0.5 (for larger
  /// values the lambda_max(Q2) bound turns conservative and the
  /// certificate is vacuous even where the raw descent pairing is fine).
  static GainGrid standard() {
    GainGrid g;
    for (double t = 0.2; t <= 0.65; t += 0.2) {
      g.theta.push_back(t);
      g.theta.push_back(-t);
    }
    for (double b = 0.3; b <= 1.55; b += 0.3) {
      g.beta.push_back(b);
      g.beta.push_back(-b);
    }
    g.vnorm = {0.1, 0.25, 0.5};
    return g;
  }
};

struct GainFeasibility {
  bool feasible = false;
  double min_gamma1 = std::numeric_limits<double>::infinity();
  struct Witness {
    double theta = 0.0, beta = 0.0, vnorm = 0.0, gamma1 = 0.0;
  } worst;
};

inline GainFeasibility gain_feasibility_se2(double k_b, double k1, double k2,
                                            const GainGrid& grid = GainGrid::standard()) {
  GainFeasibility out;
  out.feasible = true;
  for (double t : grid.theta) {
    for (double b : grid.beta) {
      for (double v : grid.vnorm) {
        const auto [q2lo, q2hi] = sym2_eigs(se2_Q2(k_b, t, b, v));
        const auto [q3lo, q3hi] = sym2_eigs(se2_Q3(k_b, t, b, v));
        (void)q2lo;
        (void)q3hi;
        const double gamma1 = std::min(k2 * q3lo - k1 * q2hi, k1);
        if (gamma1 < out.min_gamma1) {
          out.min_gamma1 = gamma1;
          out.worst = {t, b, v, gamma1};
        }
        if (gamma1 <= 0.0) out.feasible = false;
      }
    }
  }
  return out;
}

}  // namespace gsmc

#endif  // GSMC_KIN_CERTIFY_HPP_
