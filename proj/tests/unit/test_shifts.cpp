#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cqd/error.hpp"
#include "cqd/shifts.hpp"

using namespace cqd;
using namespace cqd::physics;

TEST(Shifts, FirstMeasuredDeviceFrozen) {
  const auto s = perturbative_shifts(0.060265116364895385, 4.216, 6.116, -0.153);
  EXPECT_NEAR(s.chi_L, 1.56e-3, 1e-15);
  EXPECT_NEAR(s.chi, -2.9547938473608443e-4, 1e-15);
}

TEST(Shifts, LambRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> fq(3.0, 6.0), g(0.01, 0.12);
  for (int i = 0; i < 200; ++i) {
    const double q = fq(rng), r = q + 1.5, gg = g(rng);
    const auto s = perturbative_shifts(gg, q, r, -0.2);
    EXPECT_NEAR(g_from_lamb(s.chi_L, q, r), gg, 1e-12);
  }
}

TEST(Shifts, RwaGapIsAlgebraic) {
  for (const double chi_L : {1e-4, 1e-3, 5e-3}) {
    EXPECT_NEAR(g_rwa_from_lamb(chi_L, 3.0, 7.0) / g_from_lamb(chi_L, 3.0, 7.0), std::sqrt(0.6), 1e-14);
  }
}

TEST(Shifts, RwaDropsCounterRotating) {
  const double g = 0.05, fq = 4.5, fr = 6.5, a = -0.22;
  const auto full = perturbative_shifts(g, fq, fr, a);
  const auto rwa = rwa_shifts(g, fq, fr, a);
  EXPECT_NEAR(rwa.chi_L, g * g / (fr - fq), 1e-15);
  EXPECT_NEAR(full.chi_L, rwa.chi_L - g * g / (fr + fq), 1e-15);
  const double D = fr - fq, S = fr + fq;
  EXPECT_NEAR(full.chi / rwa.chi, 1.0 + D * (D - a) / (S * (S + a)), 1e-12);
}

TEST(Shifts, SignsFollowDetuning) {
  EXPECT_GT(perturbative_shifts(0.05, 4.0, 6.0, -0.2).chi_L, 0.0);
  EXPECT_LT(perturbative_shifts(0.05, 8.0, 6.0, -0.2).chi_L, 0.0);
}

TEST(Shifts, DegenerateDetuningThrows) {
  try {
    perturbative_shifts(0.05, 6.0, 6.0, -0.2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_detuning);
  }
  EXPECT_THROW(perturbative_shifts(0.05, 6.2, 6.0, -0.2), Error);
  EXPECT_THROW(g_from_lamb(1e-3, 6.0, 6.0), Error);
}

TEST(Shifts, LambSignMismatchRejected) {
  EXPECT_THROW(g_from_lamb(-1e-3, 4.0, 6.0), Error);
}
