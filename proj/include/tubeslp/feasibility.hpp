#pragma once

#include <span>
#include <string_view>

#include "tubeslp/lp.hpp"
#include "tubeslp/problem.hpp"

namespace tubeslp {

struct FeasIterParams {
  int max_inner = 100;
  /// Divergence watchdog: n_watch consecutive contraction ratios above
  /// kappa_watch mean the inner iterates are not converging.
  int n_watch = 5;
  double kappa_watch = 0.9;
  /// Infeasibility floor; ratios whose predecessor lies below it are not
  /// counted by the watchdog.
  double sigma_inner = 1e-6;

  void validate() const;
};

enum class FeasFailure { None, PlpInfeasible, Watchdog, MaxInner, RatioCondition };

std::string_view to_string(FeasFailure reason);

struct FeasIterOutcome {
  Vector w_hat;
  ConstraintValues values;  // (g, h) at w_hat
  double v = 0.0;
  bool success = false;
  int inner_count = 0;  // inner iterates evaluated after w_bar
  FeasFailure failure_reason = FeasFailure::None;
};

/// True iff the latest value is non-finite or the last n_watch ratios
/// history[i] / history[i-1] all exceed kappa_watch.
bool divergence_check(std::span<const double> history,
                      const FeasIterParams& params);

/// Projects the LP solution `w_bar` towards {v <= tau} by solving parametric
/// LPs built from the outer linearization. `at_w_bar` are the constraint
/// values already evaluated at `w_bar`; every further inner iterate costs one
/// constraint-pair evaluation.
FeasIterOutcome feas_iterations(Evaluator& evaluator, const Linearization& lin,
                                const Vector& w_bar,
                                const ConstraintValues& at_w_bar, double delta,
                                double tau, const FeasIterParams& params,
                                const LpOptions& lp_options = {});

/// Convenience overload that evaluates the constraints at `w_bar` first.
FeasIterOutcome feas_iterations(Evaluator& evaluator, const Linearization& lin,
                                const Vector& w_bar, double delta, double tau,
                                const FeasIterParams& params,
                                const LpOptions& lp_options = {});

}  // namespace tubeslp
