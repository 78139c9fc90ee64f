#pragma once

#include "tubeslp/feasibility.hpp"
#include "tubeslp/solver.hpp"
#include "tubeslp/trust_region.hpp"

namespace tubeslp {

struct FslpConfig {
  double delta0 = 1.0;
  double tau = 1e-8;           // feasibility tolerance kept by every iterate
  double sigma_outer = 1e-7;   // stop once |m_f(w_bar)| <= sigma_outer
  int max_outer = 1000;
  TrustRegionParams trust_region;
  FeasIterParams feasibility;
  LpOptions lp;

  void validate() const;
};

/// Feasible SLP: trust-region LP steps projected back onto {v <= tau} by
/// the feasibility iterations. The objective is the merit function.
class FslpSolver {
 public:
  /// Throws std::invalid_argument if v(w0) > config.tau.
  FslpSolver(const NlpProblem& problem, const Vector& w0, FslpConfig config);

  /// Runs one outer iteration. Returns false once the solve has terminated.
  bool step();

  SolverStatus status() const { return status_; }
  const Iterate& current() const { return current_; }
  double delta() const { return delta_; }
  const std::vector<IterationRecord>& trace() const { return trace_; }
  const EvalCounters& counters() const { return evaluator_.counters(); }

  SolverResult result() const;

 private:
  void outer_step();

  const NlpProblem& problem_;
  FslpConfig config_;
  Evaluator evaluator_;
  Iterate current_;
  double delta_;
  int k_ = 0;
  SolverStatus status_ = SolverStatus::Running;
  std::string message_;
  double last_model_value_ = kNotComputed;
  std::vector<IterationRecord> trace_;
  EvalCounters recorded_;
};

SolverResult solve_fslp(const NlpProblem& problem, const Vector& w0,
                        const FslpConfig& config);

}  // namespace tubeslp
