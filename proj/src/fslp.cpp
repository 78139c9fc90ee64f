#include "tubeslp/fslp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tubeslp {

void FslpConfig::validate() const {
  trust_region.validate();
  feasibility.validate();
  if (!(delta0 > 0.0 && delta0 <= trust_region.delta_max)) {
    throw std::invalid_argument("FslpConfig: delta0 must lie in (0, delta_max]");
  }
  if (!(tau >= 0.0)) throw std::invalid_argument("FslpConfig: tau < 0");
  if (!(sigma_outer > 0.0)) {
    throw std::invalid_argument("FslpConfig: sigma_outer must be positive");
  }
  if (max_outer < 0) throw std::invalid_argument("FslpConfig: max_outer < 0");
}

FslpSolver::FslpSolver(const NlpProblem& problem, const Vector& w0,
                       FslpConfig config)
    : problem_(problem),
      config_(std::move(config)),
      evaluator_(problem),
      delta_(config_.delta0) {
  config_.validate();
  current_ = evaluator_.evaluate(w0);
  if (current_.v > config_.tau) {
    std::ostringstream msg;
    msg << "FSLP needs a feasible start: v(w0) = " << current_.v
        << " > tau = " << config_.tau;
    throw std::invalid_argument(msg.str());
  }
}

bool FslpSolver::step() {
  if (status_ != SolverStatus::Running) return false;
  if (k_ >= config_.max_outer) {
    status_ = SolverStatus::MaxIterations;
    return false;
  }
  try {
    outer_step();
  } catch (const EvaluationError& e) {
    status_ = SolverStatus::EvaluationError;
    message_ = e.what();
  }
  return status_ == SolverStatus::Running;
}

void FslpSolver::outer_step() {
  IterationRecord rec;
  rec.k = k_;
  rec.phase = Phase::Fslp;
  rec.delta = delta_;
  rec.v = current_.v;
  rec.f = current_.f;
  rec.w = current_.w;

  auto finish = [&] {
    const EvalCounters& now = evaluator_.counters();
    rec.constraint_evals = now.n_constraint_pairs - recorded_.n_constraint_pairs;
    rec.jacobian_evals = now.n_jacobian_pairs - recorded_.n_jacobian_pairs;
    recorded_ = now;
    trace_.push_back(std::move(rec));
    ++k_;
  };

  const Linearization lin = evaluator_.linearize(current_);
  const LpSolution sol =
      solve_lp(build_trust_region_lp(lin, delta_, problem_), config_.lp);
  rec.lp_status = sol.status;
  if (sol.status != LpStatus::Optimal) {
    throw LpSolverError(
        "trust-region LP at a feasible iterate reported " +
        std::string(to_string(sol.status)));
  }

  const double model = sol.objective;
  last_model_value_ = model;
  if (std::abs(model) <= config_.sigma_outer) {
    status_ = SolverStatus::Converged;
    finish();
    return;
  }

  const Vector w_bar = current_.w + sol.x;
  const double step_norm = problem_.step_norm(sol.x);
  rec.step_norm = step_norm;
  const ConstraintValues at_bar = evaluator_.constraints(w_bar);
  const FeasIterOutcome feas =
      feas_iterations(evaluator_, lin, w_bar, at_bar, delta_, config_.tau,
                      config_.feasibility, config_.lp);
  rec.inner_count = feas.inner_count;

  double next_delta;
  if (feas.success) {
    const Iterate trial = evaluator_.complete(feas.w_hat, feas.values);
    const double predicted = -model;
    const double actual = current_.f - trial.f;
    const double rho = reduction_ratio(actual, predicted);
    rec.rho = rho;
    rec.predicted = predicted;
    rec.trial_v = trial.v;
    next_delta = delta_update(rho, step_norm, delta_, config_.trust_region);
    auto [next, accepted] =
        acceptance(rho, current_, trial, config_.trust_region.sigma_accept);
    current_ = std::move(next);
    rec.accepted = accepted;
  } else {
    rec.trial_v = feas.v;
    next_delta = shrink_radius(step_norm, delta_, config_.trust_region);
  }
  delta_ = next_delta;
  finish();

  if (delta_ < config_.trust_region.delta_min) {
    status_ = SolverStatus::RadiusTooSmall;
  }
}

SolverResult FslpSolver::result() const {
  SolverResult out;
  out.w_final = current_.w;
  out.f_final = current_.f;
  out.v_final = current_.v;
  out.status = status_ == SolverStatus::Running ? SolverStatus::MaxIterations
                                                : status_;
  out.outer_iterations = static_cast<int>(trace_.size());
  out.counters = evaluator_.counters();
  out.trace = trace_;
  out.last_model_value = last_model_value_;
  out.message = message_;
  return out;
}

SolverResult solve_fslp(const NlpProblem& problem, const Vector& w0,
                        const FslpConfig& config) {
  FslpSolver solver(problem, w0, config);
  while (solver.step()) {
  }
  return solver.result();
}

}  // namespace tubeslp
