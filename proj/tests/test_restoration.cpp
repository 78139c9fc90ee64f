#include <gtest/gtest.h>

#include <cmath>

#include "tubeslp/problems.hpp"
#include "tubeslp/restoration.hpp"

namespace tubeslp {
namespace {

OuterState state_at(Evaluator& ev, const Vector& w, double delta, double tau,
                    double beta = 0.9) {
  OuterState s;
  s.current = ev.evaluate(w);
  s.delta = delta;
  s.tube.tau = tau;
  s.tube.beta = beta;
  return s;
}

TEST(RestorationModel, ZeroStepEqualsL1Violation) {
  const NamedProblem p = make_cycling_example();
  Evaluator ev(p.problem);
  const Linearization lin = ev.linearize(p.default_start);
  EXPECT_DOUBLE_EQ(restoration_model_value(lin, p.default_start),
                   restoration_infeasibility(lin.g, lin.h));
}

TEST(RestorationModel, HandLinearization) {
  const NamedProblem p = make_cycling_example();
  Evaluator ev(p.problem);
  const Linearization lin = ev.linearize(Vector{{-0.25, -0.9}});
  // h1 = 1.0 + (-0.5, -1)(1, 0.5) = 0, h2 = -0.65 + (-1, 1)(1, 0.5) = -1.15
  EXPECT_NEAR(restoration_model_value(lin, Vector{{0.75, -0.4}}), 0.0, 1e-15);
  // Step (0.5, 0.5): h1 = 1 - 0.25 - 0.5 = 0.25, h2 = -0.65.
  EXPECT_NEAR(restoration_model_value(lin, Vector{{0.25, -0.4}}), 0.25, 1e-15);
}

TEST(RestorationModel, FeasibleLinearizationIsZero) {
  const NamedProblem p = make_parabola_example();
  Evaluator ev(p.problem);
  const Linearization lin = ev.linearize(p.default_start);
  EXPECT_EQ(restoration_model_value(lin, Vector{{0.5, 2.0}}), 0.0);
}

TEST(RestorationStep, CyclingStartSmallRadius) {
  const NamedProblem p = make_cycling_example();
  Evaluator ev(p.problem);
  OuterState s = state_at(ev, p.default_start, 0.5, 0.5);
  const Linearization lin = ev.linearize(s.current);
  RestorationParams params;
  const RestorationReport rep = restoration_step(ev, lin, s, params);
  ASSERT_EQ(rep.lp.status, LpStatus::Optimal);
  EXPECT_NEAR(rep.model_value, 0.25, 1e-12);
  EXPECT_NEAR(rep.predicted, 0.75, 1e-12);
  // True l1 violation at (0.25, -0.4): h1 = 0.0625 + 0.0375 + 0.4 = 0.5.
  EXPECT_NEAR(rep.v_r_trial, 0.5, 1e-12);
  EXPECT_NEAR(rep.rho, 0.5 / 0.75, 1e-12);
  EXPECT_GT(rep.rho, 0.0);
  EXPECT_LE(rep.rho, 1.0);
  EXPECT_FALSE(rep.in_tube);
  EXPECT_TRUE(rep.accepted);
  EXPECT_FALSE(rep.tube_shrunk);
  EXPECT_EQ(s.current.w, rep.w_trial);
  EXPECT_DOUBLE_EQ(s.tube.tau, 0.5);
}

TEST(RestorationStep, FeasibleBaseIsNoOp) {
  const NamedProblem p = make_parabola_example();
  Evaluator ev(p.problem);
  OuterState s = state_at(ev, p.default_start, 1.0, 1e-3);
  const Linearization lin = ev.linearize(s.current);
  const RestorationReport rep = restoration_step(ev, lin, s, RestorationParams{});
  EXPECT_TRUE(rep.degenerate);
  EXPECT_FALSE(rep.stationary);
  EXPECT_FALSE(rep.accepted);
  EXPECT_DOUBLE_EQ(s.delta, 1.0);
}

TEST(RestorationStep, LinearConstraintsGiveUnitRatio) {
  // Linear constraints: the model is exact.
  NlpProblem p;
  p.n_w = 2;
  p.n_g = 1;
  p.n_h = 1;
  p.f = [](const Vector& w) { return w.sum(); };
  p.grad_f = [](const Vector&) { return Vector::Ones(2).eval(); };
  p.g = [](const Vector& w) { return Vector{{w(0) - 2.0}}; };
  p.h = [](const Vector& w) { return Vector{{1.0 - w(1)}}; };
  p.jac_g = [](const Vector&) { return Matrix{{1.0, 0.0}}; };
  p.jac_h = [](const Vector&) { return Matrix{{0.0, -1.0}}; };
  Evaluator ev(p);
  OuterState s = state_at(ev, Vector{{0.0, 0.0}}, 0.5, 0.1);
  const Linearization lin = ev.linearize(s.current);
  const RestorationReport rep = restoration_step(ev, lin, s, RestorationParams{});
  EXPECT_NEAR(rep.rho, 1.0, 1e-12);
  EXPECT_TRUE(rep.accepted);
  EXPECT_DOUBLE_EQ(s.delta, 1.0);
}

TEST(RestorationStep, InTubeAcceptanceShrinksTube) {
  // Base inside the tube, trial also inside: tau shrinks by beta.
  NlpProblem p;
  p.n_w = 1;
  p.n_g = 0;
  p.n_h = 1;
  p.f = [](const Vector& w) { return w(0); };
  p.grad_f = [](const Vector&) { return Vector::Ones(1).eval(); };
  p.g = [](const Vector&) { return Vector(0); };
  p.h = [](const Vector& w) { return Vector{{0.01 - w(0)}}; };
  p.jac_g = [](const Vector&) { return Matrix(0, 1); };
  p.jac_h = [](const Vector&) { return Matrix{{-1.0}}; };
  Evaluator ev(p);
  OuterState s = state_at(ev, Vector{{0.0}}, 1.0, 1.0, 0.5);
  ASSERT_LE(s.current.v, s.tube.bound());
  const Linearization lin = ev.linearize(s.current);
  const RestorationReport rep = restoration_step(ev, lin, s, RestorationParams{});
  EXPECT_TRUE(rep.in_tube);
  EXPECT_TRUE(rep.accepted);
  EXPECT_TRUE(rep.tube_shrunk);
  EXPECT_DOUBLE_EQ(s.tube.tau, 0.5);
  EXPECT_LE(s.current.v, s.tube.tau);
}

TEST(RestorationStep, InTubeTrialLeavingTubeRejected) {
  // g = (1 + 0.15 w^2, 1 - w) at w = 0 with radius 1: the LP step w = 1
  // lowers the l1 violation from 2 to 1.15 (ratio 0.85) but raises the max
  // violation to 1.15, above the tube bound 0.9 * 1.2 = 1.08.
  NlpProblem p;
  p.n_w = 1;
  p.n_g = 2;
  p.n_h = 0;
  p.f = [](const Vector& w) { return w(0); };
  p.grad_f = [](const Vector&) { return Vector::Ones(1).eval(); };
  p.g = [](const Vector& w) {
    return Vector{{1.0 + 0.15 * w(0) * w(0), 1.0 - w(0)}};
  };
  p.h = [](const Vector&) { return Vector(0); };
  p.jac_g = [](const Vector& w) { return Matrix{{0.3 * w(0)}, {-1.0}}; };
  p.jac_h = [](const Vector&) { return Matrix(0, 1); };
  Evaluator ev(p);
  OuterState s = state_at(ev, Vector{{0.0}}, 1.0, 1.2);
  ASSERT_LE(s.current.v, s.tube.bound());
  const Linearization lin = ev.linearize(s.current);
  const RestorationReport rep = restoration_step(ev, lin, s, RestorationParams{});
  EXPECT_TRUE(rep.in_tube);
  EXPECT_NEAR(rep.rho, 0.85, 1e-12);
  EXPECT_NEAR(rep.trial_v, 1.15, 1e-12);
  EXPECT_FALSE(rep.accepted);
  EXPECT_DOUBLE_EQ(s.tube.tau, 1.2);
  EXPECT_EQ(s.current.w, Vector{{0.0}});
  EXPECT_LT(s.delta, 1.0);

  // Without the safeguard the same trial is accepted and tau is kept.
  Evaluator ev2(p);
  OuterState s2 = state_at(ev2, Vector{{0.0}}, 1.0, 1.2);
  RestorationParams legacy;
  legacy.tube_safeguard = false;
  const RestorationReport rep2 =
      restoration_step(ev2, ev2.linearize(s2.current), s2, legacy);
  EXPECT_TRUE(rep2.accepted);
  EXPECT_DOUBLE_EQ(s2.tube.tau, 1.2);
}

TEST(RestorationStep, InfeasibleStationaryPoint) {
  // h = 1 + w^2 <= 0 has no solution; w = 0 is l1-stationary.
  NlpProblem p;
  p.n_w = 1;
  p.n_g = 0;
  p.n_h = 1;
  p.f = [](const Vector& w) { return w(0); };
  p.grad_f = [](const Vector&) { return Vector::Ones(1).eval(); };
  p.g = [](const Vector&) { return Vector(0); };
  p.h = [](const Vector& w) { return Vector{{1.0 + w(0) * w(0)}}; };
  p.jac_g = [](const Vector&) { return Matrix(0, 1); };
  p.jac_h = [](const Vector& w) { return Matrix{{2.0 * w(0)}}; };
  Evaluator ev(p);
  OuterState s = state_at(ev, Vector{{0.0}}, 1.0, 1e-3);
  const Linearization lin = ev.linearize(s.current);
  const RestorationReport rep = restoration_step(ev, lin, s, RestorationParams{});
  EXPECT_TRUE(rep.stationary);
  EXPECT_GT(rep.v_r_base, RestorationParams{}.eps_f);
}

}  // namespace
}  // namespace tubeslp
