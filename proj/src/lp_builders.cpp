#include <stdexcept>

#include "tubeslp/lp.hpp"

namespace tubeslp {
namespace {

// Adds ||P d||_inf <= delta on the first n columns of `lp`.
void add_trust_region(LpProblem& lp, Index n, double delta,
                      const NlpProblem& problem) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("trust-region radius must be positive");
  }
  if (problem.has_identity_projection()) {
    lp.lb.head(n).setConstant(-delta);
    lp.ub.head(n).setConstant(delta);
    return;
  }
  const Matrix& p = problem.projection;
  const Index rows = lp.a_in.rows();
  const Index ny = p.rows();
  Matrix a(rows + 2 * ny, lp.num_vars());
  a.setZero();
  a.topRows(rows) = lp.a_in;
  a.block(rows, 0, ny, n) = p;
  a.block(rows + ny, 0, ny, n) = -p;
  Vector b(rows + 2 * ny);
  b.head(rows) = lp.b_in;
  b.tail(2 * ny).setConstant(delta);
  lp.a_in = std::move(a);
  lp.b_in = std::move(b);
}

LpProblem shell(const Linearization& lin, Index num_vars) {
  LpProblem lp;
  lp.c = Vector::Zero(num_vars);
  lp.lb = Vector::Constant(num_vars, -kInf);
  lp.ub = Vector::Constant(num_vars, kInf);
  lp.a_eq = Matrix::Zero(lin.jac_g.rows(), num_vars);
  lp.a_in = Matrix::Zero(lin.jac_h.rows(), num_vars);
  return lp;
}

}  // namespace

LpProblem build_trust_region_lp(const Linearization& lin, double delta,
                                const NlpProblem& problem) {
  const Index n = lin.base_point.size();
  LpProblem lp = shell(lin, n);
  lp.c = lin.grad_f;
  lp.a_eq = lin.jac_g;
  lp.b_eq = -lin.g;
  lp.a_in = lin.jac_h;
  lp.b_in = -lin.h;
  add_trust_region(lp, n, delta, problem);
  return lp;
}

LpProblem build_plp(const Linearization& lin, const Vector& g_l,
                    const Vector& h_l, const Vector& w_l, double delta,
                    const NlpProblem& problem) {
  const Index n = lin.base_point.size();
  const Vector offset = w_l - lin.base_point;
  LpProblem lp = shell(lin, n);
  lp.c = lin.grad_f;
  lp.a_eq = lin.jac_g;
  lp.b_eq = lin.jac_g * offset - g_l;
  lp.a_in = lin.jac_h;
  lp.b_in = lin.jac_h * offset - h_l;
  add_trust_region(lp, n, delta, problem);
  return lp;
}

LpProblem build_restoration_lp(const Linearization& lin, double delta,
                               const NlpProblem& problem) {
  const Index n = lin.base_point.size();
  const Index ng = lin.g.size();
  const Index nh = lin.h.size();
  // Column layout: d | s | t_plus | t_minus
  const Index total = n + nh + 2 * ng;
  LpProblem lp = shell(lin, total);
  lp.c.segment(n, nh + 2 * ng).setOnes();
  lp.lb.segment(n, nh + 2 * ng).setZero();

  lp.a_eq.leftCols(n) = lin.jac_g;
  lp.a_eq.block(0, n + nh, ng, ng) = -Matrix::Identity(ng, ng);
  lp.a_eq.block(0, n + nh + ng, ng, ng) = Matrix::Identity(ng, ng);
  lp.b_eq = -lin.g;

  lp.a_in.leftCols(n) = lin.jac_h;
  lp.a_in.block(0, n, nh, nh) = -Matrix::Identity(nh, nh);
  lp.b_in = -lin.h;

  add_trust_region(lp, n, delta, problem);
  return lp;
}

}  // namespace tubeslp
