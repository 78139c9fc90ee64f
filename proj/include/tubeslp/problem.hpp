#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "tubeslp/types.hpp"

namespace tubeslp {

/// Raised when a callback returns a wrongly sized or non-finite result.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Smooth NLP  min f(w)  s.t.  g(w) = 0,  h(w) <= 0.
///
/// Inequalities are always stored in the `h(w) <= 0` orientation; problems
/// written with `>=` must be negated when the callbacks are assembled.
/// `projection` selects and scales the variables that enter the trust-region
/// norm. An empty matrix stands for the identity.
struct NlpProblem {
  Index n_w = 0;
  Index n_g = 0;
  Index n_h = 0;

  std::function<double(const Vector&)> f;
  std::function<Vector(const Vector&)> grad_f;
  std::function<Vector(const Vector&)> g;
  std::function<Vector(const Vector&)> h;
  std::function<Matrix(const Vector&)> jac_g;
  std::function<Matrix(const Vector&)> jac_h;

  Matrix projection;
  std::optional<Vector> known_solution;

  bool has_identity_projection() const { return projection.size() == 0; }

  /// ||P d||_inf, the trust-region metric.
  double step_norm(const Vector& d) const;

  /// Throws std::invalid_argument on missing callbacks or inconsistent sizes.
  void validate() const;
};

/// Evaluation counts for one solve. Constraint and Jacobian evaluations are
/// counted in (g, h) pairs.
struct EvalCounters {
  std::int64_t n_f = 0;
  std::int64_t n_grad_f = 0;
  std::int64_t n_constraint_pairs = 0;
  std::int64_t n_jacobian_pairs = 0;
};

struct ConstraintValues {
  Vector g;
  Vector h;
};

/// A point together with its objective and constraint values.
struct Iterate {
  Vector w;
  double f = 0.0;
  Vector g;
  Vector h;
  double v = 0.0;
};

/// First-order snapshot at a base point.
struct Linearization {
  Vector base_point;
  double f = 0.0;
  Vector grad_f;
  Vector g;
  Vector h;
  Matrix jac_g;
  Matrix jac_h;
};

/// ||g||_inf + ||max(h, 0)||_inf. Empty blocks contribute zero.
double infeasibility(const Vector& g, const Vector& h);

/// ||g||_1 + ||max(h, 0)||_1.
double restoration_infeasibility(const Vector& g, const Vector& h);

/// Counting wrapper around an NlpProblem. One instance per solve.
class Evaluator {
 public:
  explicit Evaluator(const NlpProblem& problem);

  const NlpProblem& problem() const { return *problem_; }
  const EvalCounters& counters() const { return counters_; }

  double objective(const Vector& w);
  Vector objective_gradient(const Vector& w);
  ConstraintValues constraints(const Vector& w);

  /// Objective plus one constraint pair.
  Iterate evaluate(const Vector& w);

  /// Builds an iterate from constraint values already computed at `w`.
  Iterate complete(const Vector& w, ConstraintValues values);

  /// Gradient and Jacobians at an already evaluated iterate.
  Linearization linearize(const Iterate& at);

  /// Evaluates everything at `w`.
  Linearization linearize(const Vector& w);

 private:
  void check_point(const Vector& w) const;

  const NlpProblem* problem_;
  EvalCounters counters_;
};

}  // namespace tubeslp
