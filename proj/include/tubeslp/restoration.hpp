#pragma once

#include "tubeslp/lp.hpp"
#include "tubeslp/problem.hpp"
#include "tubeslp/trust_region.hpp"

namespace tubeslp {

/// Width tau of the relaxed feasible set and the margin factor beta.
/// Iterates inside the tube satisfy v <= beta * tau.
struct ToleranceTube {
  double tau = 1e-3;
  double beta = 0.9;

  double bound() const { return beta * tau; }
};

/// Mutable part of an outer iteration that restoration may change.
struct OuterState {
  Iterate current;
  double delta = 1.0;
  ToleranceTube tube;
  /// Consecutive restoration steps whose length fell below the small-step
  /// threshold.
  int small_restoration_steps = 0;
};

struct RestorationParams {
  TrustRegionParams trust_region;
  double eps_f = 1e-7;
  /// In-tube safeguard: trials entered from inside the tube must stay inside
  /// it, and an accepted one shrinks tau by beta.
  bool tube_safeguard = true;
  double small_step_tol = 1e-10;
  LpOptions lp;
};

/// Linearized l1 violation
///   ||g + J_g (w - w_k)||_1 + ||max(h + J_h (w - w_k), 0)||_1.
double restoration_model_value(const Linearization& lin, const Vector& w);

struct RestorationReport {
  LpSolution lp;
  Vector w_trial;
  double step_norm = 0.0;
  double v_r_base = 0.0;
  double v_r_trial = 0.0;
  double model_value = 0.0;
  double actual = 0.0;
  double predicted = 0.0;
  double rho = 0.0;
  double trial_v = 0.0;
  bool in_tube = false;
  bool accepted = false;
  bool tube_shrunk = false;
  /// Predicted reduction vanished; the radius was left unchanged.
  bool degenerate = false;
  /// No further l1 progress is possible at an infeasible point.
  bool stationary = false;
};

/// One SLP step on the elastic l1 feasibility problem, entered when the
/// trust-region LP at `state.current` is infeasible. Updates the radius,
/// the iterate and the tube in `state`.
RestorationReport restoration_step(Evaluator& evaluator,
                                   const Linearization& lin, OuterState& state,
                                   const RestorationParams& params);

}  // namespace tubeslp
