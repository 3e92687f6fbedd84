#include "gsmc/kin/so3_ctrl.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

namespace gsmc {
namespace {

using testing::random_rotation;
using testing::random_unit;
using testing::rotation_oracle;

TEST(So3XiU, Examples) {
  const So3KinematicController ctrl;
  EXPECT_TRUE(ctrl.xi_u(Rotation3::Identity()).isZero(0.0));

  const Rotation3 R = Rotation3::from_matrix(rotation_oracle(Vec3(0, 0, 1), 1.0));
  EXPECT_LT((ctrl.xi_u(R) - Vec3(0, 0, 1)).norm(), 1e-13);
}

TEST(So3XiU, InversionAntisymmetry) {
  const So3KinematicController ctrl;
  std::mt19937_64 rng(31);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Rotation3 R = random_rotation(rng, 3.0);
    worst = std::max(worst, (ctrl.xi_u(R.inverse()) + ctrl.xi_u(R)).norm());
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(So3Morse, Examples) {
  const So3KinematicController ctrl;
  EXPECT_DOUBLE_EQ(ctrl.morse(Rotation3::Identity()), 0.0);
  // tr(rot_z(pi/2)) = 1, so V = 2 - sqrt(2)
  EXPECT_NEAR(ctrl.morse(so3_exp(Vec3(0, 0, M_PI_2))), 2.0 - std::sqrt(2.0), 1e-15);
  // supremum 2 approached at the critical set
  EXPECT_GT(ctrl.morse(so3_exp(Vec3(M_PI - 1e-5, 0, 0))), 2.0 - 1e-4);
  EXPECT_LE(ctrl.morse(random_rotation(*new std::mt19937_64(32))), 2.0);
}

TEST(So3MorseGrad, CriticalPointAndDirection) {
  const So3KinematicController ctrl;
  EXPECT_TRUE(ctrl.body_grad(Rotation3::Identity()).isZero(0.0));

  const Rotation3 R = so3_exp(Vec3(0, 0, 0.5));
  const Vec3 g = ctrl.body_grad(R);
  const double psi = 1.0 / (2.0 * std::sqrt(1.0 + R.trace()));
  EXPECT_NEAR(g.z(), psi * 2.0 * std::sin(0.5), 1e-14);
  EXPECT_NEAR(g.x(), 0.0, 1e-15);
  EXPECT_NEAR(g.y(), 0.0, 1e-15);
}

TEST(So3MorseGrad, FiniteDifference) {
  const So3KinematicController ctrl;
  std::mt19937_64 rng(33);
  const double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Rotation3 R = random_rotation(rng, 2.9);
    const Vec3 xi = random_unit(rng);
    const double fd =
        (ctrl.morse(R * so3_exp(h * xi)) - ctrl.morse(R * so3_exp(-h * xi))) / (2.0 * h);
    const double an = ctrl.body_grad(R).dot(xi);
    worst = std::max(worst, std::abs(fd - an) / std::max(1e-9, std::abs(an)));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(So3MorseGrad, ThrowsOnCriticalSet) {
  const So3KinematicController ctrl;
  const Rotation3 R = Rotation3::from_matrix(rotation_oracle(Vec3(1, 0, 0), M_PI - 1e-9));
  EXPECT_THROW(ctrl.body_grad(R), NearAntipodal);
}

TEST(So3Descent, PairingStrictlyNegative) {
  const So3KinematicController ctrl;
  std::mt19937_64 rng(34);
  for (int i = 0; i < 1000; ++i) {
    const Rotation3 R = random_rotation(rng, 3.0);
    if (ctrl.morse(R) < 1e-12) continue;
    EXPECT_LT(ctrl.body_grad(R).dot(-ctrl.xi_u(R)), 0.0);
  }
}

TEST(So3XiUDot, FiniteDifference) {
  const So3KinematicController ctrl;
  std::mt19937_64 rng(35);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const Rotation3 R = random_rotation(rng, 2.8);
    const Vec3 omega = random_unit(rng);
    const Vec3 fd =
        (ctrl.xi_u(R * so3_exp(h * omega)) - ctrl.xi_u(R * so3_exp(-h * omega))) / (2.0 * h);
    EXPECT_LT((ctrl.xi_u_dot(R, omega) - fd).norm(), 1e-6);
  }
}

TEST(So3Basin, Membership) {
  const So3KinematicController ctrl;
  EXPECT_TRUE(ctrl.in_basin(Rotation3::Identity()));
  EXPECT_TRUE(ctrl.in_basin(so3_exp(Vec3(0, 0, 2.5))));
  EXPECT_FALSE(ctrl.in_basin(so3_exp(Vec3(M_PI - 1e-6, 0, 0))));
}

}  // namespace
}  // namespace gsmc
