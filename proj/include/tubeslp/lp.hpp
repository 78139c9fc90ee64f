#pragma once

#include <stdexcept>
#include <string_view>

#include "tubeslp/problem.hpp"
#include "tubeslp/types.hpp"

namespace tubeslp {

/// Dense LP:  min c'x  s.t.  A_eq x = b_eq,  A_in x <= b_in,  lb <= x <= ub.
/// Bounds may be infinite.
struct LpProblem {
  Vector c;
  Matrix a_eq;
  Vector b_eq;
  Matrix a_in;
  Vector b_in;
  Vector lb;
  Vector ub;

  Index num_vars() const { return c.size(); }
  /// Throws std::invalid_argument when dimensions disagree or lb > ub.
  void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector x;  // meaningful only when Optimal
  double objective = 0.0;
  /// Sum of artificial variables at the end of phase one.
  double phase1_objective = 0.0;
  int iterations = 0;
};

/// Iteration limit or a numerically broken basis.
class LpSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-11;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_limit = 50;
  /// Iteration cap is iteration_factor * (variables + rows).
  int iteration_factor = 50;
};

/// Two-phase primal simplex on the bounded-variable form.
LpSolution solve_lp(const LpProblem& lp, const LpOptions& options = {});

/// Trust-region LP in the step d = w - w_k:
///   min grad_f'd  s.t.  g + J_g d = 0,  h + J_h d <= 0,  ||P d||_inf <= delta.
/// With the identity projection the norm becomes the bounds -delta <= d <= delta.
LpProblem build_trust_region_lp(const Linearization& lin, double delta,
                                const NlpProblem& problem);

/// Parametric LP of the feasibility iterations, in d = w - w_k. Constraint
/// rows are re-anchored at the inner iterate w_l while the Jacobians and the
/// trust region stay at the outer base point:
///   g_l + J_g (w - w_l) = 0,  h_l + J_h (w - w_l) <= 0,  ||P (w - w_k)|| <= delta.
LpProblem build_plp(const Linearization& lin, const Vector& g_l,
                    const Vector& h_l, const Vector& w_l, double delta,
                    const NlpProblem& problem);

/// Elastic l1 restoration LP over (d, s, t_plus, t_minus):
///   min sum(t_plus) + sum(t_minus) + sum(s)
///   s.t. g + J_g d - t_plus + t_minus = 0,  h + J_h d - s <= 0,
///        s, t_plus, t_minus >= 0,  ||P d||_inf <= delta.
/// Only d is trust-region bounded.
LpProblem build_restoration_lp(const Linearization& lin, double delta,
                               const NlpProblem& problem);

}  // namespace tubeslp
