#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cqd/error.hpp"
#include "cqd/extraction.hpp"

using namespace cqd;
using namespace cqd::physics;

namespace {

std::vector<FluxPoint> synthetic(const TunableCouplerParams& p, double lo, double hi, int n) {
  std::vector<FluxPoint> pts;
  for (int i = 0; i < n; ++i) {
    const double phi = lo + (hi - lo) * i / (n - 1);
    const auto b = avoided_crossing_branches(flux_tuned_fq(phi, p.f_max, p.d), p.f_r, p.g);
    pts.push_back({phi, std::abs(b.upper - p.f_r) < std::abs(b.lower - p.f_r) ? b.upper : b.lower});
  }
  return pts;
}

}  // namespace

TEST(Extraction, FluxTuning) {
  EXPECT_DOUBLE_EQ(flux_tuned_fq(0.0, 8.0, 0.3), 8.0);
  EXPECT_NEAR(flux_tuned_fq(std::numbers::pi / 2, 8.0, 0.3), 8.0 * std::sqrt(0.3), 1e-12);
  EXPECT_NEAR(flux_tuned_fq(0.7, 8.0, 1.0), 8.0, 1e-12);
  EXPECT_NEAR(flux_tuned_fq(0.4, 8.0, 0.3), flux_tuned_fq(-0.4, 8.0, 0.3), 1e-15);
}

TEST(Extraction, BranchesSplitByTwoGOnResonance) {
  const auto b = avoided_crossing_branches(6.5, 6.5, 0.08);
  EXPECT_NEAR(b.upper - b.lower, 0.16 * 6.5 * 2 / std::sqrt(4 * 6.5 * 6.5 + 4 * 0.08 * 0.08) , 1e-4);
  EXPECT_GT(b.upper, 6.5);
  EXPECT_LT(b.lower, 6.5);
}

TEST(Extraction, BranchesApproachBareFarAway) {
  const auto b = avoided_crossing_branches(3.0, 6.5, 0.01);
  EXPECT_NEAR(b.upper, 6.5, 1e-4);
  EXPECT_NEAR(b.lower, 3.0, 1e-4);
}

TEST(Extraction, NoiselessRecovery) {
  const TunableCouplerParams truth{8.0, 0.3, 6.5, 0.08};
  const auto pts = synthetic(truth, -1.4, 1.4, 81);
  const auto fit = fit_avoided_crossing(pts, {7.8, 0.35, 6.48, 0.065});
  EXPECT_NEAR(fit.params.f_max, 8.0, 1e-6);
  EXPECT_NEAR(fit.params.d, 0.3, 1e-6);
  EXPECT_NEAR(fit.params.f_r, 6.5, 1e-6);
  EXPECT_NEAR(fit.params.g, 0.08, 1e-7);
  EXPECT_LT(fit.rms_residual, 1e-9);
}

TEST(Extraction, FixedParametersStay) {
  const TunableCouplerParams truth{8.0, 0.3, 6.5, 0.08};
  const auto pts = synthetic(truth, -1.4, 1.4, 61);
  FitOptions opt;
  opt.fix_d = true;
  const auto fit = fit_avoided_crossing(pts, {7.8, 0.3, 6.49, 0.07}, opt);
  EXPECT_DOUBLE_EQ(fit.params.d, 0.3);
  EXPECT_EQ(fit.std_errors.d, 0.0);
  EXPECT_NEAR(fit.params.g, 0.08, 1e-6);
}

TEST(Extraction, RejectsTooFewPoints) {
  const auto pts = synthetic({8.0, 0.3, 6.5, 0.08}, -1.0, 1.0, 3);
  EXPECT_THROW(fit_avoided_crossing(pts, {8.0, 0.3, 6.5, 0.08}), Error);
}

TEST(Extraction, RejectsNarrowFluxSpan) {
  const auto pts = synthetic({8.0, 0.3, 6.5, 0.08}, 0.0, 0.5, 20);
  EXPECT_THROW(fit_avoided_crossing(pts, {8.0, 0.3, 6.5, 0.08}), Error);
}

TEST(Extraction, ZeroSpanIsDegenerate) {
  std::vector<FluxPoint> pts(6, FluxPoint{0.3, 6.4});
  try {
    fit_avoided_crossing(pts, {8.0, 0.3, 6.5, 0.08});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::degenerate_data);
  }
}

TEST(Extraction, AlphaFromTwoPhoton) {
  EXPECT_NEAR(alpha_from_spectroscopy(5.0, 4.9), -0.2, 1e-12);
}

TEST(Extraction, RecoversFromLowFrequencyGuess) {
  const TunableCouplerParams truth{8.0, 0.3, 6.5, 0.08};
  const auto pts = synthetic(truth, -1.4, 1.4, 61);
  for (const bool fix_d : {false, true}) {
    FitOptions opt;
    opt.fix_d = fix_d;
    const auto fit = fit_avoided_crossing(pts, {7.8, 0.3, 6.48, 0.05}, opt);
    EXPECT_NEAR(fit.params.f_max, 8.0, 1e-6);
    EXPECT_NEAR(fit.params.g, 0.08, 1e-6);
  }
}
