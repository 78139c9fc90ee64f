#include "tubeslp/afslp.hpp"

#include <cmath>
#include <stdexcept>

namespace tubeslp {

void AfslpConfig::validate() const {
  trust_region.validate();
  feasibility.validate();
  auto fail = [](const char* what) {
    throw std::invalid_argument(std::string("AfslpConfig: ") + what);
  };
  if (!(delta0 > 0.0 && delta0 <= trust_region.delta_max)) {
    fail("delta0 must lie in (0, delta_max]");
  }
  if (!(tau0 > 0.0 && std::isfinite(tau0))) fail("tau0 must be positive");
  if (!(beta > 0.0 && beta < 1.0)) fail("beta must lie in (0, 1)");
  if (!(sigma_switch >= 0.0 && sigma_switch < 1.0)) {
    fail("sigma_switch must lie in [0, 1)");
  }
  if (!(eps_f > 0.0 && eps_o > 0.0)) fail("tolerances must be positive");
  if (max_outer < 0) fail("max_outer < 0");
}

Phase classify_phase(bool lp_feasible, double v, double tube_bound) {
  if (!lp_feasible) return Phase::Restoration;
  return v > tube_bound ? Phase::PhaseI : Phase::PhaseII;
}

bool check_termination(double v, double model_value,
                       const AfslpConfig& config) {
  return v <= config.eps_f && std::abs(model_value) <= config.eps_o;
}

double phase_one_ratio(double v_current, double v_trial) {
  return reduction_ratio(v_current - v_trial, v_current);
}

AfslpSolver::AfslpSolver(const NlpProblem& problem, const Vector& w0,
                         AfslpConfig config)
    : problem_(problem), config_(std::move(config)), evaluator_(problem) {
  config_.validate();
  if (config_.legacy) config_.feasibility.max_inner = 1;
  state_.current = evaluator_.evaluate(w0);
  state_.delta = config_.delta0;
  state_.tube = ToleranceTube{config_.tau0, config_.beta};
}

double AfslpSolver::tube_bound() const {
  return config_.legacy ? state_.tube.tau : state_.tube.bound();
}

bool AfslpSolver::step() {
  if (status_ != SolverStatus::Running) return false;
  if (k_ >= config_.max_outer) {
    status_ = SolverStatus::MaxIterations;
    return false;
  }
  try {
    classify_and_dispatch();
  } catch (const EvaluationError& e) {
    status_ = SolverStatus::EvaluationError;
    message_ = e.what();
  }
  return status_ == SolverStatus::Running;
}

void AfslpSolver::classify_and_dispatch() {
  IterationRecord rec;
  rec.k = k_;
  rec.delta = state_.delta;
  rec.v = state_.current.v;
  rec.f = state_.current.f;
  rec.tau = state_.tube.tau;
  rec.w = state_.current.w;

  const Linearization lin = evaluator_.linearize(state_.current);
  const LpSolution sol =
      solve_lp(build_trust_region_lp(lin, state_.delta, problem_), config_.lp);
  rec.lp_status = sol.status;
  if (sol.status == LpStatus::Unbounded) {
    throw LpSolverError("trust-region LP is unbounded; check the projection");
  }

  rec.phase = classify_phase(sol.status == LpStatus::Optimal,
                             state_.current.v, tube_bound());
  switch (rec.phase) {
    case Phase::PhaseI:
      state_.small_restoration_steps = 0;
      phase1_step(sol, rec);
      break;
    case Phase::PhaseII:
      state_.small_restoration_steps = 0;
      phase2_step(lin, sol, rec);
      break;
    default:
      restoration(lin, rec);
      break;
  }

  const EvalCounters& now = evaluator_.counters();
  rec.constraint_evals = now.n_constraint_pairs - recorded_.n_constraint_pairs;
  rec.jacobian_evals = now.n_jacobian_pairs - recorded_.n_jacobian_pairs;
  recorded_ = now;
  trace_.push_back(std::move(rec));
  ++k_;

  if (status_ == SolverStatus::Running &&
      state_.delta < config_.trust_region.delta_min) {
    status_ = SolverStatus::RadiusTooSmall;
  }
}

void AfslpSolver::phase1_step(const LpSolution& sol, IterationRecord& rec) {
  last_model_value_ = sol.objective;
  const Iterate& current = state_.current;
  const Iterate trial = evaluator_.evaluate(current.w + sol.x);
  const double step_norm = problem_.step_norm(sol.x);
  const double rho = phase_one_ratio(current.v, trial.v);
  rec.rho = rho;
  rec.predicted = current.v;
  rec.trial_v = trial.v;
  rec.step_norm = step_norm;

  const double next_delta =
      delta_update(rho, step_norm, state_.delta, config_.trust_region);
  auto [next, accepted] =
      acceptance(rho, current, trial, config_.trust_region.sigma_accept);
  state_.current = std::move(next);
  state_.delta = next_delta;
  rec.accepted = accepted;
}

void AfslpSolver::phase2_step(const Linearization& lin, const LpSolution& sol,
                              IterationRecord& rec) {
  const double model = sol.objective;
  last_model_value_ = model;
  const Iterate& current = state_.current;
  if (check_termination(current.v, model, config_)) {
    status_ = SolverStatus::Converged;
    return;
  }

  const Vector w_bar = current.w + sol.x;
  const double step_norm = problem_.step_norm(sol.x);
  rec.step_norm = step_norm;
  const double bound = tube_bound();

  ConstraintValues at_bar = evaluator_.constraints(w_bar);
  bool success;
  Vector w_hat;
  ConstraintValues at_hat;
  if (infeasibility(at_bar.g, at_bar.h) <= bound) {
    success = true;
    w_hat = w_bar;
    at_hat = std::move(at_bar);
  } else {
    FeasIterOutcome feas =
        feas_iterations(evaluator_, lin, w_bar, at_bar, state_.delta, bound,
                        config_.feasibility, config_.lp);
    rec.inner_count = feas.inner_count;
    success = feas.success;
    w_hat = std::move(feas.w_hat);
    at_hat = std::move(feas.values);
  }

  const double predicted = -model;
  rec.predicted = predicted;
  rec.trial_v = infeasibility(at_hat.g, at_hat.h);
  const bool switching =
      config_.legacy ||
      switching_condition(predicted, current.v, config_.sigma_switch);

  double next_delta;
  if (success && switching) {
    const Iterate trial = evaluator_.complete(w_hat, std::move(at_hat));
    const double actual = current.f - trial.f;
    const double rho = config_.legacy ? actual / predicted
                                      : reduction_ratio(actual, predicted);
    rec.rho = rho;
    next_delta = delta_update(rho, step_norm, state_.delta, config_.trust_region);
    auto [next, accepted] =
        acceptance(rho, current, trial, config_.trust_region.sigma_accept);
    state_.current = std::move(next);
    rec.accepted = accepted;
  } else {
    next_delta = shrink_radius(step_norm, state_.delta, config_.trust_region);
  }
  state_.delta = next_delta;
}

void AfslpSolver::restoration(const Linearization& lin, IterationRecord& rec) {
  RestorationParams params;
  params.trust_region = config_.trust_region;
  params.eps_f = config_.eps_f;
  params.tube_safeguard = !config_.legacy;
  params.small_step_tol = config_.restoration_small_step;
  params.lp = config_.lp;

  const RestorationReport rep =
      restoration_step(evaluator_, lin, state_, params);
  rec.rho = rep.rho;
  rec.predicted = rep.predicted;
  rec.trial_v = rep.trial_v;
  rec.step_norm = rep.step_norm;
  rec.accepted = rep.accepted;
  if (rep.stationary) {
    status_ = SolverStatus::InfeasibleStationary;
    message_ = "restoration made no progress on the l1 violation";
  }
}

SolverResult AfslpSolver::result() const {
  SolverResult out;
  out.w_final = state_.current.w;
  out.f_final = state_.current.f;
  out.v_final = state_.current.v;
  out.status = status_ == SolverStatus::Running ? SolverStatus::MaxIterations
                                                : status_;
  out.outer_iterations = static_cast<int>(trace_.size());
  out.counters = evaluator_.counters();
  out.trace = trace_;
  out.last_model_value = last_model_value_;
  out.message = message_;
  return out;
}

SolverResult solve_afslp(const NlpProblem& problem, const Vector& w0,
                         const AfslpConfig& config) {
  AfslpSolver solver(problem, w0, config);
  while (solver.step()) {
  }
  return solver.result();
}

}  // namespace tubeslp
