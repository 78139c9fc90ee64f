#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tubeslp/lp.hpp"
#include "tubeslp/problem.hpp"

namespace tubeslp::testing {

/// Central differences of a vector function, one column per variable.
inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& fn,
                          const Vector& w, double step = 1e-6) {
  const Vector f0 = fn(w);
  Matrix jac(f0.size(), w.size());
  for (Index j = 0; j < w.size(); ++j) {
    Vector wp = w, wm = w;
    wp(j) += step;
    wm(j) -= step;
    jac.col(j) = (fn(wp) - fn(wm)) / (2.0 * step);
  }
  return jac;
}

/// Largest entrywise error relative to max(1, |reference|).
inline double relative_error(const Matrix& analytic, const Matrix& reference) {
  double worst = 0.0;
  for (Index i = 0; i < reference.rows(); ++i) {
    for (Index j = 0; j < reference.cols(); ++j) {
      const double scale = std::max(1.0, std::abs(reference(i, j)));
      worst = std::max(worst, std::abs(analytic(i, j) - reference(i, j)) / scale);
    }
  }
  return worst;
}

struct OracleResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
};

inline bool lp_feasible(const LpProblem& lp, const Vector& x, double tol) {
  for (Index j = 0; j < x.size(); ++j) {
    if (x(j) < lp.lb(j) - tol || x(j) > lp.ub(j) + tol) return false;
  }
  if (lp.a_eq.rows() > 0 &&
      ((lp.a_eq * x - lp.b_eq).array().abs() > tol).any()) {
    return false;
  }
  if (lp.a_in.rows() > 0 && ((lp.a_in * x - lp.b_in).array() > tol).any()) {
    return false;
  }
  return true;
}

/// Best vertex value with infinite bounds replaced by a box of half-width M.
/// Returns +inf if the boxed polytope is empty.
inline double boxed_vertex_minimum(const LpProblem& lp, double big) {
  const Index n = lp.c.size();
  LpProblem boxed = lp;
  for (Index j = 0; j < n; ++j) {
    boxed.lb(j) = std::max(lp.lb(j), -big);
    boxed.ub(j) = std::min(lp.ub(j), big);
  }
  // Every constraint as a row a'x = b when active.
  std::vector<Eigen::RowVectorXd> rows;
  std::vector<double> rhs;
  for (Index i = 0; i < lp.a_eq.rows(); ++i) {
    rows.push_back(lp.a_eq.row(i));
    rhs.push_back(lp.b_eq(i));
  }
  for (Index i = 0; i < lp.a_in.rows(); ++i) {
    rows.push_back(lp.a_in.row(i));
    rhs.push_back(lp.b_in(i));
  }
  for (Index j = 0; j < n; ++j) {
    Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(n);
    e(j) = 1.0;
    rows.push_back(e);
    rhs.push_back(boxed.lb(j));
    rows.push_back(e);
    rhs.push_back(boxed.ub(j));
  }
  const int m = static_cast<int>(rows.size());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(n);
  // Enumerate n-subsets of the m candidate rows.
  std::function<void(int, int)> recurse = [&](int start, int depth) {
    if (depth == n) {
      Matrix a(n, n);
      Vector b(n);
      for (Index r = 0; r < n; ++r) {
        a.row(r) = rows[pick[r]];
        b(r) = rhs[pick[r]];
      }
      Eigen::FullPivLU<Matrix> lu(a);
      if (!lu.isInvertible()) return;
      const Vector x = lu.solve(b);
      const double tol = 1e-9 * std::max(1.0, x.lpNorm<Eigen::Infinity>());
      if (!lp_feasible(boxed, x, tol)) return;
      best = std::min(best, lp.c.dot(x));
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[depth] = i;
      recurse(i + 1, depth + 1);
    }
  };
  recurse(0, 0);
  return best;
}

inline OracleResult vertex_oracle(const LpProblem& lp) {
  constexpr double kBig = 1e6;
  const double at_m = boxed_vertex_minimum(lp, kBig);
  OracleResult out;
  if (!std::isfinite(at_m)) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  const double at_2m = boxed_vertex_minimum(lp, 2 * kBig);
  if (at_2m < at_m - 1e-6 * std::max(1.0, std::abs(at_m))) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.objective = at_m;
  return out;
}

/// Small integer-data LP with at most 4 variables and 6 rows. About two
/// thirds are built around a known feasible point.
inline LpProblem random_small_lp(std::mt19937& rng) {
  std::uniform_int_distribution<int> nvar(1, 4), coef(-3, 3), pm(0, 2),
      slack(0, 3), coin(0, 2), neq(0, 2);
  const int n = nvar(rng);
  const int m_eq = std::min(neq(rng), n);
  std::uniform_int_distribution<int> nin(0, 6 - m_eq);
  const int m_in = nin(rng);

  LpProblem lp;
  lp.c = Vector(n);
  for (int j = 0; j < n; ++j) lp.c(j) = coef(rng);
  lp.lb = Vector(n);
  lp.ub = Vector(n);
  Vector x0(n);
  for (int j = 0; j < n; ++j) {
    x0(j) = coef(rng);
    const int kind = coin(rng);
    lp.lb(j) = kind == 0 ? -kInf : (kind == 1 ? x0(j) - pm(rng) : x0(j));
    lp.ub(j) = coin(rng) == 0 ? kInf : x0(j) + pm(rng);
  }
  const bool anchored = coin(rng) != 0;
  lp.a_eq = Matrix(m_eq, n);
  lp.b_eq = Vector(m_eq);
  for (int i = 0; i < m_eq; ++i) {
    for (int j = 0; j < n; ++j) lp.a_eq(i, j) = coef(rng);
    lp.b_eq(i) = anchored ? lp.a_eq.row(i).dot(x0) : coef(rng);
  }
  lp.a_in = Matrix(m_in, n);
  lp.b_in = Vector(m_in);
  for (int i = 0; i < m_in; ++i) {
    for (int j = 0; j < n; ++j) lp.a_in(i, j) = coef(rng);
    lp.b_in(i) = anchored ? lp.a_in.row(i).dot(x0) + slack(rng) : coef(rng);
  }
  return lp;
}

}  // namespace tubeslp::testing
