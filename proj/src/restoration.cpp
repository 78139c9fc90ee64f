#include "tubeslp/restoration.hpp"

#include <algorithm>

namespace tubeslp {

double restoration_model_value(const Linearization& lin, const Vector& w) {
  const Vector d = w - lin.base_point;
  const Vector g = lin.g + lin.jac_g * d;
  const Vector h = lin.h + lin.jac_h * d;
  return restoration_infeasibility(g, h);
}

RestorationReport restoration_step(Evaluator& evaluator,
                                   const Linearization& lin, OuterState& state,
                                   const RestorationParams& params) {
  const NlpProblem& problem = evaluator.problem();
  const Index n = problem.n_w;
  const Iterate& base = state.current;

  RestorationReport rep;
  rep.lp = solve_lp(build_restoration_lp(lin, state.delta, problem), params.lp);
  if (rep.lp.status != LpStatus::Optimal) {
    throw LpSolverError("restoration LP reported " +
                        std::string(to_string(rep.lp.status)));
  }
  const Vector d = rep.lp.x.head(n);
  rep.w_trial = base.w + d;
  rep.step_norm = problem.step_norm(d);
  rep.v_r_base = restoration_infeasibility(base.g, base.h);
  rep.model_value = restoration_model_value(lin, rep.w_trial);
  rep.predicted = rep.v_r_base - rep.model_value;
  rep.in_tube = params.tube_safeguard && base.v <= state.tube.bound();

  const double small =
      params.small_step_tol *
      std::max(1.0, base.w.lpNorm<Eigen::Infinity>());
  if (rep.step_norm <= small) {
    ++state.small_restoration_steps;
  } else {
    state.small_restoration_steps = 0;
  }

  if (rep.predicted <= kPredictedEps) {
    rep.degenerate = true;
    rep.stationary = rep.v_r_base > params.eps_f;
    rep.rho = reduction_ratio(0.0, rep.predicted);
    rep.trial_v = base.v;
    return rep;
  }
  if (state.small_restoration_steps >= 2 && rep.v_r_base > params.eps_f) {
    rep.stationary = true;
  }

  const Iterate trial = evaluator.evaluate(rep.w_trial);
  rep.trial_v = trial.v;
  rep.v_r_trial = restoration_infeasibility(trial.g, trial.h);
  rep.actual = rep.v_r_base - rep.v_r_trial;
  rep.rho = reduction_ratio(rep.actual, rep.predicted);

  const double tube_bound = state.tube.bound();
  rep.accepted = rep.rho > params.trust_region.sigma_accept &&
                 (!rep.in_tube || trial.v <= tube_bound);
  const double next_delta =
      rep.accepted
          ? delta_update(rep.rho, rep.step_norm, state.delta,
                         params.trust_region)
          : shrink_radius(rep.step_norm, state.delta, params.trust_region);
  if (rep.accepted) {
    state.current = trial;
    if (rep.in_tube) {
      state.tube.tau *= state.tube.beta;
      rep.tube_shrunk = true;
    }
  }
  state.delta = next_delta;
  return rep;
}

}  // namespace tubeslp
