#include "gsmc/kin/certify.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace gsmc {
namespace {

TEST(Definition1, So3AllPass) {
  const So3KinematicController ctrl;
  const WeightedMetric metric(Mat3::Identity());
  const auto rep = check_definition1(ctrl, So3SampleDomain{}, 10000, 101, metric);
  EXPECT_TRUE(rep.prop_i_ok);
  EXPECT_TRUE(rep.prop_ii_ok);
  EXPECT_EQ(rep.prop_iii_violations, 0);
  EXPECT_GT(rep.prop_iv_rate_estimate, 0.0);
  EXPECT_EQ(rep.samples, 10000);
  EXPECT_GT(rep.b1_estimate, 0.0);
  EXPECT_GE(rep.b2_estimate, rep.b1_estimate);
}

TEST(Definition1, Se2PaperGains) {
  const Se2KinematicController ctrl(10.0, 0.01, 0.1);
  const WeightedMetric metric(Vec3(3.0, 3.0, 0.025).asDiagonal());
  const auto rep = check_definition1(ctrl, Se2SampleDomain{}, 10000, 102, metric);
  EXPECT_TRUE(rep.prop_i_ok);
  EXPECT_EQ(rep.prop_iii_violations, 0);
  EXPECT_GT(rep.prop_iv_rate_estimate, 0.0);
  // the printed beta is even in v_z: the inversion identity holds exactly
  // on the translational/heading components and fails by 2 k_b |beta|
  EXPECT_LT(rep.prop_ii_nonbeta_max_defect, 1e-10);
  EXPECT_FALSE(rep.prop_ii_ok);
  EXPECT_GT(rep.prop_ii_max_defect, 0.1);
  EXPECT_LE(rep.prop_ii_max_defect, 2.0 * ctrl.k_b * M_PI_2 + 1e-9);
}

TEST(Definition1, Se2SmallKbViolatesDescent) {
  const Se2KinematicController ctrl(1.0, 0.01, 0.1);
  const WeightedMetric metric(Vec3(3.0, 3.0, 0.025).asDiagonal());
  const auto rep = check_definition1(ctrl, Se2SampleDomain{}, 10000, 103, metric);
  EXPECT_GT(rep.prop_iii_violations, 0);
  EXPECT_LE(static_cast<size_t>(rep.prop_iii_violations), static_cast<size_t>(rep.samples));
  EXPECT_FALSE(rep.violations.empty());
  // summary and CSV emission
  std::ostringstream summary, csv;
  rep.write_summary(summary, "se2-kb1");
  rep.write_violations_csv(csv);
  EXPECT_NE(summary.str().find("violations"), std::string::npos);
  EXPECT_NE(csv.str().find("index,angle,lyapunov,pairing"), std::string::npos);
}

TEST(Assumption3, HoldsAtK1Over8) {
  const Se2KinematicController ctrl(10.0, 0.01, 0.1);
  const auto rep = check_assumption3(ctrl, ctrl.k1 / 8.0, Se2SampleDomain{}, 100000, 104);
  EXPECT_TRUE(rep.ok);
  EXPECT_EQ(rep.violations, 0);
  EXPECT_GE(rep.min_ratio, ctrl.k1 / 8.0);
}

TEST(Assumption3, FailsAtTenK1) {
  const Se2KinematicController ctrl(10.0, 0.01, 0.1);
  const auto rep = check_assumption3(ctrl, 10.0 * ctrl.k1, Se2SampleDomain{}, 10000, 105);
  EXPECT_FALSE(rep.ok);
  EXPECT_GT(rep.violations, 0);
  EXPECT_LT(rep.min_ratio, 10.0 * ctrl.k1);
}

TEST(GainFeasibility, PaperGainsFeasible) {
  const auto v = gain_feasibility_se2(10.0, 0.01, 0.1);
  EXPECT_TRUE(v.feasible);
  EXPECT_GT(v.min_gamma1, 0.0);
}

TEST(GainFeasibility, SmallKbInfeasibleWithWitness) {
  const auto v = gain_feasibility_se2(1.0, 0.01, 0.1);
  EXPECT_FALSE(v.feasible);
  EXPECT_LE(v.worst.gamma1, 0.0);
  EXPECT_NE(v.worst.vnorm, 0.0);  // witness grid point recorded
}

TEST(GainFeasibility, ZeroK2Infeasible) {
  const auto v = gain_feasibility_se2(10.0, 0.01, 0.0);
  EXPECT_FALSE(v.feasible);
}

TEST(Sym2Eigs, ClosedForm) {
  Mat2 m;
  m << 3.0, 1.0, 1.0, 1.0;
  const auto [lo, hi] = sym2_eigs(m);
  EXPECT_NEAR(lo, 2.0 - std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(hi, 2.0 + std::sqrt(2.0), 1e-14);
}

}  // namespace
}  // namespace gsmc
