#include <gtest/gtest.h>

#include <random>

#include "tubeslp/problems.hpp"
#include "tubeslp/trust_region.hpp"

namespace tubeslp {
namespace {

TEST(ReductionRatio, Examples) {
  EXPECT_DOUBLE_EQ(reduction_ratio(0.5, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(reduction_ratio(-0.1, 0.2), -0.5);
}

TEST(ReductionRatio, DegeneratePredictionSentinels) {
  EXPECT_EQ(reduction_ratio(0.3, -0.5), kInf);
  EXPECT_EQ(reduction_ratio(-0.5, -0.5), -kInf);
  EXPECT_EQ(reduction_ratio(0.0, 0.0), -kInf);
  EXPECT_EQ(reduction_ratio(1e-3, 1e-15), kInf);
}

TEST(DeltaUpdate, Examples) {
  const TrustRegionParams tr;
  EXPECT_DOUBLE_EQ(delta_update(0.0, 4.0, 4.0, tr), 2.0);
  EXPECT_DOUBLE_EQ(delta_update(0.9, 1.0, 1.0, tr), 2.0);
  EXPECT_DOUBLE_EQ(delta_update(0.5, 0.3, 1.0, tr), 1.0);
  // Inside the region a very good step keeps the radius.
  EXPECT_DOUBLE_EQ(delta_update(0.9, 0.5, 1.0, tr), 1.0);
  EXPECT_DOUBLE_EQ(delta_update(0.9, 8.0, 8.0, tr), 10.0);
}

TEST(DeltaUpdate, ProjectedStep) {
  const TrustRegionParams tr;
  const NlpProblem p = make_parabola_example().problem;
  const Vector w{{1.0, 3.0}};
  const Vector w_bar{{-3.0, -0.3}};
  EXPECT_DOUBLE_EQ(delta_update(-kInf, w, w_bar, 4.0, p, tr), 2.0);
}

TEST(DeltaUpdate, BoundedAndShrinking) {
  const TrustRegionParams tr;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> r(-2.0, 2.0), frac(0.0, 1.0),
      delta(1e-6, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const double d = delta(rng);
    const double step = frac(rng) < 0.2 ? d : d * frac(rng);
    const double rho = frac(rng) < 0.05 ? -kInf : r(rng);
    const double out = delta_update(rho, step, d, tr);
    EXPECT_GE(out, 0.0);
    EXPECT_LE(out, tr.delta_max);
    if (rho < tr.eta1 && step > 0.0) EXPECT_LT(out, step);
  }
}

TEST(ShrinkRadius, ZeroStepGuard) {
  const TrustRegionParams tr;
  EXPECT_DOUBLE_EQ(shrink_radius(0.0, 3.0, tr), 1.5);
  EXPECT_DOUBLE_EQ(shrink_radius(4.0, 4.0, tr), 2.0);
  EXPECT_GT(delta_update(-1.0, 0.0, 3.0, tr), 0.0);
}

Iterate make_iterate(double f) {
  Iterate it;
  it.w = Vector{{f}};
  it.f = f;
  return it;
}

TEST(Acceptance, Examples) {
  const Iterate cur = make_iterate(1.0), trial = make_iterate(0.5);
  EXPECT_TRUE(acceptance(1.0, cur, trial, 0.1).second);
  EXPECT_EQ(acceptance(1.0, cur, trial, 0.1).first.f, 0.5);
  EXPECT_FALSE(acceptance(-kInf, cur, trial, 0.1).second);
  EXPECT_EQ(acceptance(-kInf, cur, trial, 0.1).first.f, 1.0);
  EXPECT_FALSE(acceptance(0.1, cur, trial, 0.1).second);
}

TEST(Acceptance, PureAndMonotone) {
  const Iterate cur = make_iterate(1.0), trial = make_iterate(0.5);
  for (double rho = -2.0; rho <= 2.0; rho += 0.01) {
    const auto a = acceptance(rho, cur, trial, 0.1);
    const auto b = acceptance(rho, cur, trial, 0.1);
    EXPECT_EQ(a.second, b.second);
    EXPECT_EQ(a.first.f, b.first.f);
    if (a.second) EXPECT_TRUE(acceptance(rho + 0.5, cur, trial, 0.1).second);
  }
}

TEST(TrustRegionParams, Validation) {
  TrustRegionParams tr;
  EXPECT_NO_THROW(tr.validate());
  tr.eta1 = 0.9;
  EXPECT_THROW(tr.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace tubeslp
