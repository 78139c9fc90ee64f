#include "tubeslp/problem.hpp"

#include <cmath>
#include <sstream>

namespace tubeslp {
namespace {

void require_finite(const Vector& values, const char* what) {
  if (!values.allFinite()) {
    throw EvaluationError(std::string("non-finite value returned by ") + what);
  }
}

void require_finite(const Matrix& values, const char* what) {
  if (!values.allFinite()) {
    throw EvaluationError(std::string("non-finite value returned by ") + what);
  }
}

void require_size(const Vector& values, Index expected, const char* what) {
  if (values.size() != expected) {
    std::ostringstream msg;
    msg << what << " returned " << values.size() << " entries, expected "
        << expected;
    throw EvaluationError(msg.str());
  }
}

void require_shape(const Matrix& values, Index rows, Index cols,
                   const char* what) {
  // An empty block may come back as 0x0.
  if (rows == 0 && values.size() == 0) return;
  if (values.rows() != rows || values.cols() != cols) {
    std::ostringstream msg;
    msg << what << " returned a " << values.rows() << "x" << values.cols()
        << " matrix, expected " << rows << "x" << cols;
    throw EvaluationError(msg.str());
  }
}

}  // namespace

double NlpProblem::step_norm(const Vector& d) const {
  if (d.size() == 0) return 0.0;
  if (has_identity_projection()) return d.lpNorm<Eigen::Infinity>();
  const Vector pd = projection * d;
  return pd.size() == 0 ? 0.0 : pd.lpNorm<Eigen::Infinity>();
}

void NlpProblem::validate() const {
  if (n_w <= 0) throw std::invalid_argument("NlpProblem: n_w must be positive");
  if (n_g < 0 || n_h < 0) {
    throw std::invalid_argument("NlpProblem: negative constraint count");
  }
  if (!f || !grad_f) {
    throw std::invalid_argument("NlpProblem: objective callbacks missing");
  }
  if (n_g > 0 && (!g || !jac_g)) {
    throw std::invalid_argument("NlpProblem: equality callbacks missing");
  }
  if (n_h > 0 && (!h || !jac_h)) {
    throw std::invalid_argument("NlpProblem: inequality callbacks missing");
  }
  if (!has_identity_projection() && projection.cols() != n_w) {
    throw std::invalid_argument("NlpProblem: projection must have n_w columns");
  }
  if (known_solution && known_solution->size() != n_w) {
    throw std::invalid_argument("NlpProblem: known_solution has wrong size");
  }
}

double infeasibility(const Vector& g, const Vector& h) {
  double eq = g.size() > 0 ? g.lpNorm<Eigen::Infinity>() : 0.0;
  double in = h.size() > 0 ? std::max(0.0, h.maxCoeff()) : 0.0;
  return eq + in;
}

double restoration_infeasibility(const Vector& g, const Vector& h) {
  double eq = g.size() > 0 ? g.lpNorm<1>() : 0.0;
  double in = h.size() > 0 ? h.cwiseMax(0.0).sum() : 0.0;
  return eq + in;
}

Evaluator::Evaluator(const NlpProblem& problem) : problem_(&problem) {
  problem.validate();
}

void Evaluator::check_point(const Vector& w) const {
  if (w.size() != problem_->n_w) {
    std::ostringstream msg;
    msg << "point has " << w.size() << " entries, problem has n_w = "
        << problem_->n_w;
    throw std::invalid_argument(msg.str());
  }
}

double Evaluator::objective(const Vector& w) {
  check_point(w);
  ++counters_.n_f;
  const double value = problem_->f(w);
  if (!std::isfinite(value)) throw EvaluationError("non-finite objective");
  return value;
}

Vector Evaluator::objective_gradient(const Vector& w) {
  check_point(w);
  ++counters_.n_grad_f;
  Vector grad = problem_->grad_f(w);
  require_size(grad, problem_->n_w, "grad_f");
  require_finite(grad, "grad_f");
  return grad;
}

ConstraintValues Evaluator::constraints(const Vector& w) {
  check_point(w);
  ++counters_.n_constraint_pairs;
  ConstraintValues out;
  out.g = problem_->n_g > 0 ? Vector(problem_->g(w)) : Vector(0);
  out.h = problem_->n_h > 0 ? Vector(problem_->h(w)) : Vector(0);
  require_size(out.g, problem_->n_g, "g");
  require_size(out.h, problem_->n_h, "h");
  require_finite(out.g, "g");
  require_finite(out.h, "h");
  return out;
}

Iterate Evaluator::evaluate(const Vector& w) {
  const double f = objective(w);
  Iterate it = complete(w, constraints(w));
  it.f = f;
  return it;
}

Iterate Evaluator::complete(const Vector& w, ConstraintValues values) {
  Iterate it;
  it.w = w;
  it.f = objective(w);
  it.v = infeasibility(values.g, values.h);
  it.g = std::move(values.g);
  it.h = std::move(values.h);
  return it;
}

Linearization Evaluator::linearize(const Iterate& at) {
  check_point(at.w);
  Linearization lin;
  lin.base_point = at.w;
  lin.f = at.f;
  lin.g = at.g;
  lin.h = at.h;
  lin.grad_f = objective_gradient(at.w);
  ++counters_.n_jacobian_pairs;
  const Index n = problem_->n_w;
  lin.jac_g = problem_->n_g > 0 ? Matrix(problem_->jac_g(at.w)) : Matrix(0, n);
  lin.jac_h = problem_->n_h > 0 ? Matrix(problem_->jac_h(at.w)) : Matrix(0, n);
  require_shape(lin.jac_g, problem_->n_g, n, "jac_g");
  require_shape(lin.jac_h, problem_->n_h, n, "jac_h");
  if (lin.jac_g.size() == 0) lin.jac_g.resize(0, n);
  if (lin.jac_h.size() == 0) lin.jac_h.resize(0, n);
  require_finite(lin.jac_g, "jac_g");
  require_finite(lin.jac_h, "jac_h");
  return lin;
}

Linearization Evaluator::linearize(const Vector& w) {
  return linearize(evaluate(w));
}

}  // namespace tubeslp
