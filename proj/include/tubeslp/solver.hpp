#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "tubeslp/lp.hpp"
#include "tubeslp/problem.hpp"

namespace tubeslp {

enum class Phase { Fslp, PhaseI, PhaseII, Restoration };

std::string_view to_string(Phase phase);

enum class SolverStatus {
  Running,
  Converged,
  MaxIterations,
  RadiusTooSmall,
  InfeasibleStationary,
  EvaluationError,
};

std::string_view to_string(SolverStatus status);

inline constexpr double kNotComputed = std::numeric_limits<double>::quiet_NaN();

/// One row per outer iteration. delta, v, f, tau and w describe the iterate
/// at the start of the iteration; the evaluation columns are the counter
/// increments incurred during it.
struct IterationRecord {
  int k = 0;
  Phase phase = Phase::Fslp;
  double delta = 0.0;
  double v = 0.0;
  double f = 0.0;
  double rho = kNotComputed;
  double tau = kNotComputed;
  int inner_count = 0;
  bool accepted = false;
  LpStatus lp_status = LpStatus::Optimal;

  double predicted = kNotComputed;  // predicted reduction behind rho
  double trial_v = kNotComputed;    // infeasibility of the trial point
  double step_norm = 0.0;           // ||P d|| of the LP step
  std::int64_t constraint_evals = 0;
  std::int64_t jacobian_evals = 0;
  Vector w;
};

struct SolverResult {
  Vector w_final;
  double f_final = 0.0;
  double v_final = 0.0;
  SolverStatus status = SolverStatus::Running;
  int outer_iterations = 0;
  EvalCounters counters;
  std::vector<IterationRecord> trace;
  /// Model value m_f(w_bar) of the last trust-region LP solved.
  double last_model_value = kNotComputed;
  std::string message;
};

}  // namespace tubeslp
