#pragma once

#include "tubeslp/feasibility.hpp"
#include "tubeslp/restoration.hpp"
#include "tubeslp/solver.hpp"
#include "tubeslp/trust_region.hpp"

namespace tubeslp {

struct AfslpConfig {
  double delta0 = 1.0;
  double tau0 = 1e-3;
  double beta = 0.9;
  double sigma_switch = 0.1;
  double eps_f = 1e-7;
  double eps_o = 1e-7;
  int max_outer = 1000;
  /// Original tolerance-tube behaviour: no switching condition, no tube
  /// shrink, a single correction step, tube membership tested against tau
  /// itself, and the unguarded reduction ratio.
  bool legacy = false;
  double restoration_small_step = 1e-10;
  TrustRegionParams trust_region;
  FeasIterParams feasibility;
  LpOptions lp;

  void validate() const;
};

/// Phase I when the LP is feasible and v > tube_bound, Phase II when the LP
/// is feasible and v <= tube_bound, Restoration when the LP is infeasible.
Phase classify_phase(bool lp_feasible, double v, double tube_bound);

/// v <= eps_f and |m_f(w_bar)| <= eps_o.
bool check_termination(double v, double model_value, const AfslpConfig& config);

/// Phase I ratio (v_k - v(w_bar)) / v_k.
double phase_one_ratio(double v_current, double v_trial);

/// Predicted objective decrease must dominate the current infeasibility.
inline bool switching_condition(double predicted, double v, double sigma) {
  return predicted >= sigma * v;
}

/// Two-phase almost-feasible SLP. Phase I drives an arbitrary start into the
/// tolerance tube; Phase II optimizes while keeping iterates inside it; an
/// l1 restoration step handles infeasible subproblems.
class AfslpSolver {
 public:
  AfslpSolver(const NlpProblem& problem, const Vector& w0, AfslpConfig config);

  /// One outer iteration (classify and dispatch). False once terminated.
  bool step();

  SolverStatus status() const { return status_; }
  const OuterState& state() const { return state_; }
  const std::vector<IterationRecord>& trace() const { return trace_; }
  const EvalCounters& counters() const { return evaluator_.counters(); }

  SolverResult result() const;

 private:
  void classify_and_dispatch();
  void phase1_step(const LpSolution& sol, IterationRecord& rec);
  void phase2_step(const Linearization& lin, const LpSolution& sol,
                   IterationRecord& rec);
  void restoration(const Linearization& lin, IterationRecord& rec);
  double tube_bound() const;

  const NlpProblem& problem_;
  AfslpConfig config_;
  Evaluator evaluator_;
  OuterState state_;
  int k_ = 0;
  SolverStatus status_ = SolverStatus::Running;
  std::string message_;
  double last_model_value_ = kNotComputed;
  std::vector<IterationRecord> trace_;
  EvalCounters recorded_;
};

SolverResult solve_afslp(const NlpProblem& problem, const Vector& w0,
                         const AfslpConfig& config);

}  // namespace tubeslp
