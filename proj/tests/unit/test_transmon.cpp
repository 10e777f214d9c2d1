#include <gtest/gtest.h>

#include <cmath>

#include "cqd/error.hpp"
#include "cqd/transmon.hpp"

using namespace cqd;
using namespace cqd::physics;

TEST(Transmon, FrozenSpectrum) {
  const auto s = transmon_fq_alpha(12.5, 0.25);
  EXPECT_NEAR(s.f_q, 4.7354797310790415, 1e-9);
  EXPECT_NEAR(s.alpha, -0.28730575730619634, 1e-9);
}

TEST(Transmon, AnharmonicityExceedsChargingEnergy) {
  const auto s = transmon_fq_alpha(50 * 0.2, 0.2);
  EXPECT_NEAR(std::abs(s.alpha) / 0.2, 1.149, 1e-3);
}

TEST(Transmon, ApproachesClosedFormDeepInTransmonRegime) {
  const double E_C = 0.2;
  double last = 1.0;
  for (const double ratio : {50.0, 200.0, 1000.0}) {
    const auto exact = transmon_fq_alpha(ratio * E_C, E_C);
    const auto approx = transmon_fq_alpha_approx(ratio * E_C, E_C);
    const double rel = std::abs(exact.alpha / approx.alpha - 1.0);
    EXPECT_LT(rel, last);
    last = rel;
    EXPECT_LT(std::abs(exact.f_q / approx.f_q - 1.0), 0.01);
  }
  EXPECT_LT(last, 0.03);
}

TEST(Transmon, LevelsAscendAndAreCutoffStable) {
  const auto a = transmon_levels(15.0, 0.3, 0.0, 20, 5);
  const auto b = transmon_levels(15.0, 0.3, 0.0, 40, 5);
  ASSERT_EQ(a.size(), 5u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) {
      EXPECT_GT(a[i], a[i - 1]);
    }
    EXPECT_NEAR(a[i], b[i], 1e-9);
  }
}

TEST(Transmon, ChargeDispersionShrinksWithRatio) {
  auto dispersion = [](double ratio) {
    const double E_C = 0.25;
    const auto l0 = transmon_levels(ratio * E_C, E_C, 0.0, 30, 2);
    const auto l1 = transmon_levels(ratio * E_C, E_C, 0.5, 30, 2);
    return std::abs((l0[1] - l0[0]) - (l1[1] - l1[0]));
  };
  EXPECT_GT(dispersion(10.0), dispersion(30.0));
  EXPECT_GT(dispersion(30.0), dispersion(60.0));
  EXPECT_LT(dispersion(60.0), 1e-5);
}

TEST(Transmon, PeriodicInOffsetCharge) {
  const auto a = transmon_levels(10.0, 0.4, 0.2, 30, 3);
  const auto b = transmon_levels(10.0, 0.4, -0.2, 30, 3);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
}

TEST(Transmon, InversionRoundTrip) {
  for (const double E_C : {0.12, 0.22, 0.34}) {
    for (const double ratio : {25.0, 60.0, 150.0}) {
      const auto s = transmon_fq_alpha(ratio * E_C, E_C);
      const auto jc = find_ej_ec(s.f_q, s.alpha);
      EXPECT_NEAR(jc.E_J, ratio * E_C, 1e-7 * ratio * E_C);
      EXPECT_NEAR(jc.E_C, E_C, 1e-7 * E_C);
    }
  }
}

TEST(Transmon, InversionRejectsUnphysicalTargets) {
  EXPECT_THROW(find_ej_ec(5.0, 0.2), Error);
  EXPECT_THROW(find_ej_ec(-5.0, -0.2), Error);
}

TEST(Transmon, RejectsBadInputs) {
  EXPECT_THROW(transmon_fq_alpha(-1.0, 0.2), Error);
  EXPECT_THROW(transmon_fq_alpha(10.0, 0.0), Error);
  EXPECT_THROW(transmon_levels(10.0, 0.2, 0.0, 0, 3), Error);
}
