#include "tubeslp/feasibility.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tubeslp {

void FeasIterParams::validate() const {
  if (max_inner < 0) throw std::invalid_argument("max_inner must be >= 0");
  if (n_watch < 1) throw std::invalid_argument("n_watch must be >= 1");
  if (!(kappa_watch > 0.0 && kappa_watch < 1.0)) {
    throw std::invalid_argument("kappa_watch must lie in (0, 1)");
  }
  if (!(sigma_inner > 0.0 && sigma_inner < 1e-5)) {
    throw std::invalid_argument("sigma_inner must lie in (0, 1e-5)");
  }
}

std::string_view to_string(FeasFailure reason) {
  switch (reason) {
    case FeasFailure::None:
      return "none";
    case FeasFailure::PlpInfeasible:
      return "plp_infeasible";
    case FeasFailure::Watchdog:
      return "watchdog";
    case FeasFailure::MaxInner:
      return "max_inner";
    case FeasFailure::RatioCondition:
      return "ratio_condition";
  }
  return "unknown";
}

bool divergence_check(std::span<const double> history,
                      const FeasIterParams& params) {
  if (history.empty()) return false;
  if (!std::isfinite(history.back())) return true;
  const auto needed = static_cast<std::size_t>(params.n_watch);
  if (history.size() < needed + 1) return false;
  for (std::size_t i = history.size() - needed; i < history.size(); ++i) {
    const double prev = history[i - 1];
    if (prev <= params.sigma_inner) return false;
    if (history[i] / prev <= params.kappa_watch) return false;
  }
  return true;
}

FeasIterOutcome feas_iterations(Evaluator& evaluator, const Linearization& lin,
                                const Vector& w_bar,
                                const ConstraintValues& at_w_bar, double delta,
                                double tau, const FeasIterParams& params,
                                const LpOptions& lp_options) {
  const NlpProblem& problem = evaluator.problem();
  const Vector& w_k = lin.base_point;
  const double outer_step = problem.step_norm(w_bar - w_k);

  FeasIterOutcome out;
  out.w_hat = w_bar;
  out.values = at_w_bar;
  std::vector<double> history;

  for (int l = 0;; ++l) {
    out.inner_count = l;
    out.v = infeasibility(out.values.g, out.values.h);
    history.push_back(out.v);

    if (out.v <= tau) {
      const double ratio =
          outer_step > 0.0 ? problem.step_norm(w_bar - out.w_hat) / outer_step
                           : 0.0;
      if (ratio < 0.5) {
        out.success = true;
        out.failure_reason = FeasFailure::None;
      } else {
        // The iterates have settled; further PLPs would not bring them back.
        out.failure_reason = FeasFailure::RatioCondition;
      }
      return out;
    }
    if (divergence_check(history, params)) {
      out.failure_reason = FeasFailure::Watchdog;
      return out;
    }
    if (l >= params.max_inner) {
      out.failure_reason = FeasFailure::MaxInner;
      return out;
    }

    const LpProblem plp = build_plp(lin, out.values.g, out.values.h,
                                    out.w_hat, delta, problem);
    const LpSolution sol = solve_lp(plp, lp_options);
    if (sol.status != LpStatus::Optimal) {
      out.failure_reason = FeasFailure::PlpInfeasible;
      return out;
    }
    out.w_hat = w_k + sol.x;
    out.values = evaluator.constraints(out.w_hat);
  }
}

FeasIterOutcome feas_iterations(Evaluator& evaluator, const Linearization& lin,
                                const Vector& w_bar, double delta, double tau,
                                const FeasIterParams& params,
                                const LpOptions& lp_options) {
  const ConstraintValues values = evaluator.constraints(w_bar);
  return feas_iterations(evaluator, lin, w_bar, values, delta, tau, params,
                         lp_options);
}

}  // namespace tubeslp
