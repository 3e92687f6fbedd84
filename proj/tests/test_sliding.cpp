#include "gsmc/ctrl/sliding.hpp"

#include <gtest/gtest.h>

#include <random>

#include "gsmc/ctrl/closed_forms.hpp"
#include "gsmc/dyn/spacecraft.hpp"
#include "gsmc/dyn/unicycle.hpp"
#include "gsmc/kin/se2_ctrl.hpp"
#include "gsmc/kin/so3_ctrl.hpp"
#include "gsmc/sim/integrate.hpp"
#include "test_support.hpp"

namespace gsmc {
namespace {

using testing::random_pose;
using testing::random_rotation;
using testing::random_unit;

const SlidingGains kGains{1.5, 2.2};

SpacecraftSystem::State random_sc_state(std::mt19937_64& rng, const SpacecraftSystem& sys,
                                        const Rotation3& Rd = Rotation3::Identity(),
                                        double theta_max = 2.5) {
  std::uniform_real_distribution<double> ang(-theta_max, theta_max);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpacecraftSystem::State s;
  s.g = Rd * so3_exp(ang(rng) * random_unit(rng));
  s.r = Vec3(u(rng), u(rng), u(rng)) * 2.0;
  s.rdot = Vec3(u(rng), u(rng), u(rng)) * 20.0;
  s.p = sys.momentum_from_velocity(Vec3(u(rng), u(rng), u(rng)), s.rdot);
  return s;
}

UnicycleSystem::State random_uc_state(std::mt19937_64& rng,
                                      const PoseSE2& gd = PoseSE2::Identity(),
                                      double theta_max = 2.5, double r_max = 1.5) {
  std::uniform_real_distribution<double> ang(-theta_max, theta_max);
  std::uniform_real_distribution<double> dir(-M_PI, M_PI);
  std::uniform_real_distribution<double> rad(0.01, r_max);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double phi = dir(rng), r = rad(rng);
  UnicycleSystem::State s;
  s.g = se2_compose(gd, PoseSE2(r * std::cos(phi), r * std::sin(phi), ang(rng)));
  s.r = Vec2(u(rng), u(rng)) * 5.0;
  s.rdot = Vec2(u(rng), u(rng)) * 20.0;
  return s;
}

// --------------------------------------------------------------------------
// Sliding-variable identities: shape-side rdot + v equals the group-side
// -A+(xi + lambda xi_u) (and the tracking analogues).

TEST(SlidingVariable, RegulationIdentitySpacecraft) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const So3KinematicController ctrl;
  std::mt19937_64 rng(61);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = random_sc_state(rng, sys);
    const Vec3 lhs = sliding_var_regulation(sys, ctrl, s, kGains);
    const Vec3 rhs = -sys.conn_pinv() * (sys.body_velocity(s) + kGains.lambda * ctrl.xi_u(s.g));
    worst = std::max(worst, (lhs - rhs).norm());
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(SlidingVariable, RegulationZeroOnSubgroupAndAtIdentity) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const So3KinematicController ctrl;
  // state on G_SL: xi = -lambda xi_u(g)
  SpacecraftSystem::State s;
  s.g = so3_exp(Vec3(0.2, -0.4, 0.3));
  const Vec3 xi = -kGains.lambda * ctrl.xi_u(s.g);
  s.rdot = Vec3(1.0, -2.0, 0.5);
  s.p = sys.momentum_from_velocity(xi, s.rdot);
  EXPECT_LT(sliding_var_regulation(sys, ctrl, s, kGains).norm(), 1e-12);

  SpacecraftSystem::State rest;  // identity, p = 0, rdot = 0
  EXPECT_TRUE(sliding_var_regulation(sys, ctrl, rest, kGains).isZero(0.0));
}

TEST(SlidingVariable, TrackingIdentityAndReduction) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const So3KinematicController ctrl;
  const auto des = so3_axis_sine_desired(Vec3(0, 1, 2), 0.3, 0.5);
  std::mt19937_64 rng(62);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double t = 10.0 * i / 500.0;
    const auto s = random_sc_state(rng, sys, des.pose(t));
    const Rotation3 ge = des.pose(t).inverse() * s.g;
    const Vec3 xi_e = sys.body_velocity(s) - ge.matrix().transpose() * des.xi(t);
    const Vec3 lhs = tracking_var(sys, ctrl, s, des, t, kGains);
    const Vec3 rhs = -sys.conn_pinv() * (xi_e + kGains.lambda * ctrl.xi_u(ge));
    worst = std::max(worst, (lhs - rhs).norm());
  }
  EXPECT_LT(worst, 1e-10);

  // reduction to regulation for g_d = e, xi_d = 0
  const auto trivial = constant_pose_desired<So3Group>(Rotation3::Identity());
  for (int i = 0; i < 100; ++i) {
    const auto s = random_sc_state(rng, sys);
    const Vec3 a = tracking_var(sys, ctrl, s, trivial, 1.0, kGains);
    const Vec3 b = sliding_var_regulation(sys, ctrl, s, kGains);
    EXPECT_LT((a - b).norm(), 1e-14);
  }
}

TEST(SlidingVariable, ConstrainedTrackingIdentity) {
  const UnicycleSystem sys{UnicycleParams{}};
  const Se2KinematicController ctrl(10.0, 0.01, 0.1);
  const auto des = desired_from_planar_path(lemniscate_path(0.8, 0.6, 0.1, 0.2), 0.0, 60.0);
  std::mt19937_64 rng(63);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const double t = 60.0 * i / 500.0;
    const auto s = random_uc_state(rng, des.pose(t));
    const PoseSE2 ge = se2_compose(se2_inverse(des.pose(t)), s.g);
    // family identity with the projected velocity error xi - xi_d
    const Vec3 aux = sys.body_velocity(s) - des.xi(t);
    const Vec2 lhs = constrained_tracking_var(sys, ctrl, s, des, t, kGains);
    const Vec2 rhs = -sys.conn_pinv() * (aux + kGains.lambda * ctrl.xi_u(ge));
    worst = std::max(worst, (lhs - rhs).norm());
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(SlidingVariable, ConstrainedRegulationAtRest) {
  const UnicycleSystem sys{UnicycleParams{}};
  const Se2KinematicController ctrl(10.0, 0.01, 0.1);
  UnicycleSystem::State s;
  s.g = PoseSE2(0.6, -0.3, 0.9);
  const Vec2 sbar = sliding_var_regulation(sys, ctrl, s, kGains);
  const Vec2 expected = -sys.conn_pinv() * (kGains.lambda * ctrl.xi_u(s.g));
  EXPECT_LT((sbar - expected).norm(), 1e-14);
}

// --------------------------------------------------------------------------
// Equilibria.

TEST(Forces, ExactlyZeroAtEquilibrium) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const UnicycleSystem uni{UnicycleParams{}};
  const So3KinematicController so3c;
  const Se2KinematicController se2c(10.0, 0.01, 0.1);

  SpacecraftSystem::State se;
  UnicycleSystem::State ue;
  EXPECT_TRUE(regulation_force(sys, so3c, se, kGains).f_u.isZero(0.0));
  EXPECT_TRUE(regulation_force(uni, se2c, ue, kGains).f_u.isZero(0.0));

  const auto d3 = constant_pose_desired<So3Group>(Rotation3::Identity());
  const auto d2 = constant_pose_desired<Se2Group>(PoseSE2::Identity());
  EXPECT_TRUE(tracking_force(sys, so3c, se, d3, 2.0, kGains).f_u.isZero(0.0));
  EXPECT_TRUE(constrained_tracking_force(uni, se2c, ue, d2, 2.0, kGains).f_u.isZero(0.0));
}

TEST(Forces, ZeroAtExactTrackingWithConstantRate) {
  // Spacecraft: exact tracking with p = 0 (wheels absorbing the body rate)
  // makes every controller term vanish.
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const So3KinematicController ctrl;
  const Vec3 omega_d(0.2, -0.1, 0.15);
  So3Desired des;
  des.pose = [omega_d](double t) { return so3_exp(t * omega_d); };
  des.xi = [omega_d](double) { return omega_d; };
  des.xi_dot = [](double) { return Vec3::Zero(); };

  const double t = 1.7;
  SpacecraftSystem::State s;
  s.g = des.pose(t);
  s.p = Vec3::Zero();
  s.rdot = -sys.conn_pinv() * omega_d;  // xi = -A rdot = omega_d
  ASSERT_LT((sys.body_velocity(s) - omega_d).norm(), 1e-15);
  const auto f = tracking_force(sys, ctrl, s, des, t, kGains);
  EXPECT_LT(f.sliding.norm(), 1e-12);
  EXPECT_LT(f.f_u.norm(), 1e-11);

  // Unicycle: exact tracking of a constant twist.
  const UnicycleSystem uni{UnicycleParams{}};
  const Se2KinematicController se2c(10.0, 0.01, 0.1);
  const Vec3 xid(0.4, 0.0, 0.25);
  Se2Desired d2;
  d2.pose = [xid](double t2) { return se2_exp(t2 * xid); };
  d2.xi = [xid](double) { return xid; };
  d2.xi_dot = [](double) { return Vec3::Zero(); };
  UnicycleSystem::State u;
  u.g = d2.pose(t);
  u.rdot = -uni.conn_pinv() * xid;
  ASSERT_LT((uni.body_velocity(u) - xid).norm(), 1e-15);
  const auto f2 = constrained_tracking_force(uni, se2c, u, d2, t, kGains);
  EXPECT_LT(f2.sliding.norm(), 1e-13);
  EXPECT_LT(f2.f_u.norm(), 1e-11);
}

TEST(Forces, RegulationOpposesSmallRotation) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const So3KinematicController ctrl;
  SpacecraftSystem::State s;
  s.g = so3_exp(Vec3(0, 0, 0.1));
  const auto f = regulation_force(sys, ctrl, s, kGains);
  // the wheel accelerates positively about z so the body torque opposes the error
  EXPECT_GT(f.f_u.z(), 0.0);
  EXPECT_GT(std::abs(f.f_u.z()), 10.0 * std::abs(f.f_u.x()));
}

// --------------------------------------------------------------------------
// Cross-implementation oracle: generic laws vs verbatim closed forms.

TEST(CrossImplementation, SpacecraftTracking) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const So3KinematicController ctrl;
  const auto des = so3_axis_sine_desired(Vec3(1, 1, 1), 0.3, 0.5);
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> tdist(0.0, 30.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = tdist(rng);
    const auto s = random_sc_state(rng, sys, des.pose(t));
    const auto gen = tracking_force(sys, ctrl, s, des, t, kGains);
    const auto ref =
        spacecraft_tracking_force_ref(sys.params(), s, des.pose(t), des.xi(t), des.xi_dot(t), kGains);
    worst = std::max(worst, (gen.f_u - ref.f_u).norm() / std::max(1.0, ref.f_u.norm()));
    worst = std::max(worst, (gen.tau - ref.tau).norm() / std::max(1.0, ref.tau.norm()));
    worst = std::max(worst, (gen.sliding - ref.varsigma).norm() /
                                std::max(1.0, ref.varsigma.norm()));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(CrossImplementation, UnicycleTracking) {
  const UnicycleSystem sys{UnicycleParams{}};
  const Se2KinematicController ctrl(10.0, 0.01, 0.1);
  const auto des = desired_from_planar_path(lemniscate_path(0.8, 0.6, 0.1, 0.2), 0.0, 60.0);
  std::mt19937_64 rng(65);
  std::uniform_real_distribution<double> tdist(0.0, 60.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = tdist(rng);
    const auto s = random_uc_state(rng, des.pose(t), 2.6, 2.0);
    const auto gen = constrained_tracking_force(sys, ctrl, s, des, t, kGains);
    const auto ref = unicycle_tracking_force_ref(sys.params(), s, des.pose(t), des.xi(t),
                                                 des.xi_dot(t), ctrl.k_b, ctrl.k1, ctrl.k2, kGains);
    worst = std::max(worst, (gen.f_u - ref.f_u).norm() / std::max(1.0, ref.f_u.norm()));
    worst = std::max(worst, (gen.tau - ref.tau).norm() / std::max(1.0, ref.tau.norm()));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(WDotFallback, FiniteDifferenceAgreesWithAnalytic) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const So3KinematicController ctrl;
  const auto des = so3_axis_sine_desired(Vec3(0, 0, 1), 0.3, 0.5);
  std::mt19937_64 rng(66);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto s = random_sc_state(rng, sys, des.pose(2.0), 2.0);
    const auto a = tracking_force(sys, ctrl, s, des, 2.0, kGains, WDotMode::analytic);
    const auto b = tracking_force(sys, ctrl, s, des, 2.0, kGains, WDotMode::finite_difference);
    worst = std::max(worst, (a.f_u - b.f_u).norm() / std::max(1.0, a.f_u.norm()));
  }
  EXPECT_LT(worst, 1e-4);

  const UnicycleSystem uni{UnicycleParams{}};
  const Se2KinematicController se2c(10.0, 0.01, 0.1);
  const auto des2 = desired_from_planar_path(lemniscate_path(0.8, 0.6, 0.1, 0.2), 0.0, 60.0);
  worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto s = random_uc_state(rng, des2.pose(5.0), 2.0, 1.0);
    const auto a = constrained_tracking_force(uni, se2c, s, des2, 5.0, kGains, WDotMode::analytic);
    const auto b =
        constrained_tracking_force(uni, se2c, s, des2, 5.0, kGains, WDotMode::finite_difference);
    worst = std::max(worst, (a.f_u - b.f_u).norm() / std::max(1.0, a.f_u.norm()));
  }
  EXPECT_LT(worst, 1e-4);
}

// --------------------------------------------------------------------------
// Closed-loop structure: the sliding vector obeys
//   d/dt s = -k_s s + M^{-1}(A^T grad V_G) along the controlled flow.

TEST(ClosedLoop, SlidingDynamicsSpacecraftRegulation) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const So3KinematicController ctrl;
  std::mt19937_64 rng(67);
  const double dt = 1e-6;
  IntegratorConfig cfg{dt, Method::rk4_cg, 1.0, 1};
  auto rhs = [&](double t, const SpacecraftSystem::State& st) {
    return sys.rhs(st, regulation_force(sys, ctrl, st, kGains).f_u);
  };
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto s = random_sc_state(rng, sys, Rotation3::Identity(), 2.0);
    const auto splus = step<So3Group, 3>(rhs, s, 0.0, cfg);
    const Vec3 s0 = sliding_var_regulation(sys, ctrl, s, kGains);
    const Vec3 s1 = sliding_var_regulation(sys, ctrl, splus, kGains);
    const Vec3 fd = (s1 - s0) / dt;
    const Vec3 expected = -kGains.k_s * s0 + sys.reduced_mass_inv() *
                                                 (sys.conn().transpose() * ctrl.body_grad(s.g));
    worst = std::max(worst, (fd - expected).norm() / std::max(1.0, expected.norm()));
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(ClosedLoop, SlidingDynamicsUnicycleTracking) {
  const UnicycleSystem sys{UnicycleParams{}};
  const Se2KinematicController ctrl(10.0, 0.01, 0.1);
  const auto des = desired_from_planar_path(lemniscate_path(0.8, 0.6, 0.1, 0.2), 0.0, 60.0);
  std::mt19937_64 rng(68);
  const double dt = 1e-6;
  IntegratorConfig cfg{dt, Method::rk4_cg, 1.0, 1};
  auto rhs = [&](double t, const UnicycleSystem::State& st) {
    return sys.rhs(st, constrained_tracking_force(sys, ctrl, st, des, t, kGains).f_u);
  };
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double t0 = 1.0 + i * 0.3;
    const auto s = random_uc_state(rng, des.pose(t0), 2.0, 1.0);
    const auto splus = step<Se2Group, 2>(rhs, s, t0, cfg);
    const Vec2 s0 = constrained_tracking_var(sys, ctrl, s, des, t0, kGains);
    const Vec2 s1 = constrained_tracking_var(sys, ctrl, splus, des, t0 + dt, kGains);
    const Vec2 fd = (s1 - s0) / dt;
    const PoseSE2 ge = se2_compose(se2_inverse(des.pose(t0)), s.g);
    const Vec2 expected =
        -kGains.k_s * s0 +
        sys.reduced_mass_inv() * (sys.conn().transpose() * ctrl.body_grad(ge));
    worst = std::max(worst, (fd - expected).norm() / std::max(1.0, expected.norm()));
  }
  EXPECT_LT(worst, 1e-4);
}

// --------------------------------------------------------------------------
// Lyapunov behavior.

TEST(Lyapunov, OneStepDecreaseAcrossGainSweep) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const UnicycleSystem uni{UnicycleParams{}};
  const So3KinematicController so3c;
  const Se2KinematicController se2c(10.0, 0.01, 0.1);
  const auto des3 = constant_pose_desired<So3Group>(Rotation3::Identity());
  const auto des2 = desired_from_planar_path(lemniscate_path(0.8, 0.6, 0.1, 0.2), 0.0, 60.0);
  IntegratorConfig cfg{1e-3, Method::rk4_cg, 1.0, 1};

  for (double ks : {1.1, 2.2, 4.4}) {
    const SlidingGains gains(1.5, ks);
    std::mt19937_64 rng(69);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
      auto s = random_sc_state(rng, sys, Rotation3::Identity(), 2.2);
      const double w0 = lyapunov_value(sys, so3c, s, des3, 0.0, gains).lyapunov_W;
      auto rhs = [&](double t, const SpacecraftSystem::State& st) {
        return sys.rhs(st, tracking_force(sys, so3c, st, des3, t, gains).f_u);
      };
      const auto s1 = step<So3Group, 3>(rhs, s, 0.0, cfg);
      const double w1 = lyapunov_value(sys, so3c, s1, des3, cfg.h, gains).lyapunov_W;
      if (w1 >= w0 && w0 > 1e-10) ++bad;
    }
    for (int i = 0; i < 100; ++i) {
      auto s = random_uc_state(rng, des2.pose(0.0), 2.2, 1.4);
      const double w0 = constrained_lyapunov_value(uni, se2c, s, des2, 0.0, gains).lyapunov_W;
      auto rhs = [&](double t, const UnicycleSystem::State& st) {
        return uni.rhs(st, constrained_tracking_force(uni, se2c, st, des2, t, gains).f_u);
      };
      const auto s1 = step<Se2Group, 2>(rhs, s, 0.0, cfg);
      const double w1 = constrained_lyapunov_value(uni, se2c, s1, des2, cfg.h, gains).lyapunov_W;
      if (w1 >= w0 && w0 > 1e-10) ++bad;
    }
    EXPECT_EQ(bad, 0) << "k_s = " << ks;

    // the equilibrium is unchanged by the gain
    SpacecraftSystem::State se;
    EXPECT_TRUE(regulation_force(sys, so3c, se, gains).f_u.isZero(0.0));
  }
}

TEST(Lyapunov, DiagnosticsAtExactTrackingAndAtTableStart) {
  const UnicycleSystem sys{UnicycleParams{}};
  const Se2KinematicController ctrl(10.0, 0.01, 0.1);
  const auto des = desired_from_planar_path(lemniscate_path(0.8, 0.6, 0.1, 0.2), 0.0, 60.0);

  // exact tracking: W = 0 and on the sliding subgroup
  UnicycleSystem::State s;
  const double t = 3.0;
  s.g = des.pose(t);
  s.rdot = -sys.conn_pinv() * des.xi(t);
  const auto diag = constrained_lyapunov_value(sys, ctrl, s, des, t, kGains);
  EXPECT_LT(diag.lyapunov_W, 1e-20);
  EXPECT_TRUE(diag.on_subgroup);
  EXPECT_LT(diag.err_xi, 1e-12);

  // experiment start: sigma = sigmadot = 0, theta = -pi/4, p = (-1, -1)
  UnicycleSystem::State x0;
  x0.g = PoseSE2(-1.0, -1.0, -M_PI / 4.0);
  const auto d0 = constrained_lyapunov_value(sys, ctrl, x0, des, 0.0, kGains);
  EXPECT_GT(d0.lyapunov_W, 0.0);
  EXPECT_GT(d0.morse, 0.0);
}

TEST(Lyapunov, MonotoneAlongClosedLoopRun) {
  const UnicycleSystem sys{UnicycleParams{}};
  const Se2KinematicController ctrl(10.0, 0.01, 0.1);
  const auto des = desired_from_planar_path(lemniscate_path(0.8, 0.6, 0.1, 0.2), 0.0, 60.0);
  UnicycleSystem::State s;
  s.g = PoseSE2(-1.0, -1.0, -M_PI / 4.0);
  IntegratorConfig cfg{1e-3, Method::rk4_cg, 5.0, 1};
  auto rhs = [&](double t, const UnicycleSystem::State& st) {
    return sys.rhs(st, constrained_tracking_force(sys, ctrl, st, des, t, kGains).f_u);
  };
  double w_prev = constrained_lyapunov_value(sys, ctrl, s, des, 0.0, kGains).lyapunov_W;
  for (int i = 0; i < 5000; ++i) {
    s = step<Se2Group, 2>(rhs, s, i * cfg.h, cfg);
    const double w = constrained_lyapunov_value(sys, ctrl, s, des, (i + 1) * cfg.h, kGains).lyapunov_W;
    ASSERT_LT(w, w_prev + 1e-10) << "step " << i;
    w_prev = w;
  }
}

TEST(Forces, NearAntipodalPropagates) {
  const SpacecraftSystem sys(SpacecraftParams::small_sat());
  const So3KinematicController ctrl;
  SpacecraftSystem::State s;
  s.g = Rotation3::from_matrix(testing::rotation_oracle(Vec3(1, 0, 0), M_PI - 1e-10));
  EXPECT_THROW(regulation_force(sys, ctrl, s, kGains), NearAntipodal);
}

TEST(SlidingGains, Validation) {
  EXPECT_THROW(SlidingGains(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(SlidingGains(1.0, -1.0), std::invalid_argument);
}

}  // namespace
}  // namespace gsmc
