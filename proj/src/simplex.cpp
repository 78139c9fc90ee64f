#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "tubeslp/lp.hpp"

namespace tubeslp {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

void LpProblem::validate() const {
  const Index n = c.size();
  auto fail = [](const char* what) { throw std::invalid_argument(what); };
  if (lb.size() != n || ub.size() != n) fail("LpProblem: bound size mismatch");
  if (a_eq.rows() != b_eq.size()) fail("LpProblem: A_eq/b_eq mismatch");
  if (a_in.rows() != b_in.size()) fail("LpProblem: A_in/b_in mismatch");
  if (a_eq.rows() > 0 && a_eq.cols() != n) fail("LpProblem: A_eq columns");
  if (a_in.rows() > 0 && a_in.cols() != n) fail("LpProblem: A_in columns");
  for (Index j = 0; j < n; ++j) {
    if (std::isnan(lb[j]) || std::isnan(ub[j]) || lb[j] > ub[j] ||
        lb[j] == kInf || ub[j] == -kInf) {
      fail("LpProblem: inconsistent variable bounds");
    }
  }
  if (!c.allFinite() || !a_eq.allFinite() || !a_in.allFinite() ||
      !b_eq.allFinite() || !b_in.allFinite()) {
    fail("LpProblem: non-finite data");
  }
}

namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class VarState : unsigned char { Basic, AtLower, AtUpper, FreeZero };

// Dense tableau simplex. Columns are laid out as
//   structural (n) | inequality slacks (m_in) | artificials.
// Row i of the tableau holds B^{-1} A; beta_ holds the basic values.
class BoundedSimplex {
 public:
  BoundedSimplex(const LpProblem& lp, const LpOptions& options)
      : options_(options),
        n_(lp.num_vars()),
        m_eq_(lp.a_eq.rows()),
        m_in_(lp.a_in.rows()),
        m_(m_eq_ + m_in_) {
    limit_ = options.iteration_factor * static_cast<int>(n_ + m_);
    limit_ = std::max(limit_, 50);
    setup(lp);
  }

  LpSolution solve(const LpProblem& lp);

 private:
  void setup(const LpProblem& lp);
  void compute_reduced_costs(const Vector& cost);
  bool run_phase(const Vector& cost);
  void pivot(Index row, Index col);
  void drive_out_artificials();
  Vector current_values() const;
  Vector refined_values() const;
  double primal_violation(const Vector& x) const;

  LpOptions options_;
  Index n_, m_eq_, m_in_, m_;
  Index first_art_ = 0;
  Index ncols_ = 0;

  RowMatrix a_;  // original constraint matrix with slack/artificial columns
  Vector b_;
  Vector lower_, upper_;
  RowMatrix tab_;
  Vector beta_;
  Vector x_;
  Vector dj_;
  std::vector<Index> basis_;
  std::vector<VarState> state_;
  int iterations_ = 0;
  int limit_ = 0;
};

void BoundedSimplex::setup(const LpProblem& lp) {
  // Nonbasic structurals start at a finite bound when one exists.
  Vector x0(n_);
  std::vector<VarState> struct_state(n_);
  for (Index j = 0; j < n_; ++j) {
    if (std::isfinite(lp.lb[j])) {
      x0[j] = lp.lb[j];
      struct_state[j] = VarState::AtLower;
    } else if (std::isfinite(lp.ub[j])) {
      x0[j] = lp.ub[j];
      struct_state[j] = VarState::AtUpper;
    } else {
      x0[j] = 0.0;
      struct_state[j] = VarState::FreeZero;
    }
  }

  Vector rhs(m_);
  if (m_eq_ > 0) rhs.head(m_eq_) = lp.b_eq - lp.a_eq * x0;
  if (m_in_ > 0) rhs.tail(m_in_) = lp.b_in - lp.a_in * x0;

  // Rows needing an artificial: every equality, and inequalities whose slack
  // would start negative.
  std::vector<Index> art_rows;
  for (Index i = 0; i < m_; ++i) {
    if (i < m_eq_ || rhs[i] < 0.0) art_rows.push_back(i);
  }
  first_art_ = n_ + m_in_;
  ncols_ = first_art_ + static_cast<Index>(art_rows.size());

  a_ = RowMatrix::Zero(m_, ncols_);
  if (m_eq_ > 0) a_.block(0, 0, m_eq_, n_) = lp.a_eq;
  if (m_in_ > 0) {
    a_.block(m_eq_, 0, m_in_, n_) = lp.a_in;
    for (Index k = 0; k < m_in_; ++k) a_(m_eq_ + k, n_ + k) = 1.0;
  }
  b_.resize(m_);
  if (m_eq_ > 0) b_.head(m_eq_) = lp.b_eq;
  if (m_in_ > 0) b_.tail(m_in_) = lp.b_in;

  lower_ = Vector::Zero(ncols_);
  upper_ = Vector::Constant(ncols_, kInf);
  lower_.head(n_) = lp.lb;
  upper_.head(n_) = lp.ub;

  x_ = Vector::Zero(ncols_);
  x_.head(n_) = x0;
  state_.assign(ncols_, VarState::AtLower);
  std::copy(struct_state.begin(), struct_state.end(), state_.begin());

  basis_.assign(m_, -1);
  std::vector<double> sign(m_, 1.0);
  for (Index i = m_eq_; i < m_; ++i) {
    if (rhs[i] >= 0.0) {
      basis_[i] = n_ + (i - m_eq_);
    }
  }
  for (std::size_t k = 0; k < art_rows.size(); ++k) {
    const Index i = art_rows[k];
    const Index col = first_art_ + static_cast<Index>(k);
    sign[i] = rhs[i] >= 0.0 ? 1.0 : -1.0;
    a_(i, col) = sign[i];
    basis_[i] = col;
  }

  tab_ = a_;
  beta_.resize(m_);
  for (Index i = 0; i < m_; ++i) {
    tab_.row(i) *= sign[i];
    beta_[i] = rhs[i] * sign[i];
    state_[basis_[i]] = VarState::Basic;
  }
}

void BoundedSimplex::compute_reduced_costs(const Vector& cost) {
  Vector cost_basis(m_);
  for (Index i = 0; i < m_; ++i) cost_basis[i] = cost[basis_[i]];
  dj_ = cost;
  if (m_ > 0) dj_.noalias() -= tab_.transpose() * cost_basis;
}

void BoundedSimplex::pivot(Index row, Index col) {
  const double piv = tab_(row, col);
  tab_.row(row) /= piv;
  tab_(row, col) = 1.0;
  for (Index i = 0; i < m_; ++i) {
    if (i == row) continue;
    const double factor = tab_(i, col);
    if (factor != 0.0) {
      tab_.row(i) -= factor * tab_.row(row);
      tab_(i, col) = 0.0;
    }
  }
  const double dq = dj_[col];
  if (dq != 0.0) {
    dj_ -= dq * tab_.row(row).transpose();
    dj_[col] = 0.0;
  }
}

// Returns false when the objective is unbounded along the chosen column.
bool BoundedSimplex::run_phase(const Vector& cost) {
  compute_reduced_costs(cost);
  bool bland = false;
  int degenerate_run = 0;
  const double tie_eps = 1e-12;

  for (;;) {
    // Pricing: Dantzig with lowest-index ties, Bland once degeneracy persists.
    Index entering = -1;
    int dir = 0;
    double best = 0.0;
    for (Index j = 0; j < ncols_; ++j) {
      const VarState st = state_[j];
      if (st == VarState::Basic || lower_[j] == upper_[j]) continue;
      const double d = dj_[j];
      int cand = 0;
      if (st == VarState::AtLower && d < -options_.optimality_tol) {
        cand = 1;
      } else if (st == VarState::AtUpper && d > options_.optimality_tol) {
        cand = -1;
      } else if (st == VarState::FreeZero &&
                 std::abs(d) > options_.optimality_tol) {
        cand = d < 0.0 ? 1 : -1;
      }
      if (cand == 0) continue;
      if (bland) {
        entering = j;
        dir = cand;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        entering = j;
        dir = cand;
      }
    }
    if (entering < 0) return true;

    if (++iterations_ > limit_) {
      std::ostringstream msg;
      msg << "simplex iteration limit (" << limit_ << ") exceeded";
      throw LpSolverError(msg.str());
    }

    // Ratio test, including the entering variable's own bound flip.
    double step = upper_[entering] - lower_[entering];
    if (!std::isfinite(step)) step = kInf;
    Index leaving_row = -1;
    double leaving_alpha = 0.0;
    for (Index i = 0; i < m_; ++i) {
      const double alpha = dir * tab_(i, entering);
      if (std::abs(alpha) <= options_.pivot_tol) continue;
      const Index bi = basis_[i];
      double limit;
      if (alpha > 0.0) {
        if (!std::isfinite(lower_[bi])) continue;
        limit = (beta_[i] - lower_[bi]) / alpha;
      } else {
        if (!std::isfinite(upper_[bi])) continue;
        limit = (upper_[bi] - beta_[i]) / -alpha;
      }
      limit = std::max(limit, 0.0);
      bool take = false;
      if (limit < step - tie_eps) {
        take = true;
      } else if (leaving_row >= 0 && limit <= step + tie_eps) {
        take = bland ? bi < basis_[leaving_row]
                     : std::abs(alpha) > std::abs(leaving_alpha);
      }
      // Exact ties with the entering bound flip keep the flip.
      if (take) {
        step = std::min(limit, step);
        leaving_row = i;
        leaving_alpha = alpha;
      }
    }

    if (!std::isfinite(step)) return false;

    if (step <= tie_eps) {
      if (++degenerate_run > options_.degenerate_limit) bland = true;
    } else {
      degenerate_run = 0;
    }

    if (step > 0.0) {
      for (Index i = 0; i < m_; ++i) {
        beta_[i] -= dir * step * tab_(i, entering);
      }
    }
    const double entering_value = x_[entering] + dir * step;

    if (leaving_row < 0) {
      state_[entering] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
      x_[entering] = dir > 0 ? upper_[entering] : lower_[entering];
      continue;
    }

    const Index leaving = basis_[leaving_row];
    if (leaving_alpha > 0.0) {
      state_[leaving] = VarState::AtLower;
      x_[leaving] = lower_[leaving];
    } else {
      state_[leaving] = VarState::AtUpper;
      x_[leaving] = upper_[leaving];
    }
    pivot(leaving_row, entering);
    basis_[leaving_row] = entering;
    state_[entering] = VarState::Basic;
    x_[entering] = entering_value;
    beta_[leaving_row] = entering_value;
  }
}

void BoundedSimplex::drive_out_artificials() {
  for (Index r = 0; r < m_; ++r) {
    if (basis_[r] < first_art_) continue;
    Index best = -1;
    double best_mag = 1e-8;
    for (Index j = 0; j < first_art_; ++j) {
      if (state_[j] == VarState::Basic) continue;
      const double mag = std::abs(tab_(r, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = j;
      }
    }
    if (best < 0) continue;  // redundant row, artificial stays fixed at zero
    const Index leaving = basis_[r];
    state_[leaving] = VarState::AtLower;
    x_[leaving] = 0.0;
    dj_ = Vector::Zero(ncols_);
    pivot(r, best);
    basis_[r] = best;
    state_[best] = VarState::Basic;
    beta_[r] = x_[best];
  }
}

Vector BoundedSimplex::current_values() const {
  Vector x = x_;
  for (Index i = 0; i < m_; ++i) x[basis_[i]] = beta_[i];
  return x;
}

// Recomputes basic values from the original data to remove drift.
Vector BoundedSimplex::refined_values() const {
  Vector x = x_;
  if (m_ == 0) return x;
  Matrix basis_matrix(m_, m_);
  Vector rhs = b_;
  for (Index j = 0; j < ncols_; ++j) {
    if (state_[j] != VarState::Basic && x_[j] != 0.0) {
      rhs -= a_.col(j) * x_[j];
    }
  }
  for (Index i = 0; i < m_; ++i) basis_matrix.col(i) = a_.col(basis_[i]);
  Eigen::PartialPivLU<Matrix> lu(basis_matrix);
  const Vector xb = lu.solve(rhs);
  for (Index i = 0; i < m_; ++i) x[basis_[i]] = xb[i];
  return x;
}

double BoundedSimplex::primal_violation(const Vector& x) const {
  if (!x.allFinite()) return kInf;
  double worst = 0.0;
  if (m_ > 0) worst = (a_ * x - b_).lpNorm<Eigen::Infinity>();
  for (Index j = 0; j < ncols_; ++j) {
    worst = std::max(worst, lower_[j] - x[j]);
    worst = std::max(worst, x[j] - upper_[j]);
  }
  return worst;
}

LpSolution BoundedSimplex::solve(const LpProblem& lp) {
  LpSolution out;

  if (first_art_ < ncols_) {
    Vector phase1_cost = Vector::Zero(ncols_);
    phase1_cost.tail(ncols_ - first_art_).setOnes();
    if (!run_phase(phase1_cost)) {
      throw LpSolverError("phase one reported an unbounded ray");
    }
    const Vector x = current_values();
    out.phase1_objective = x.tail(ncols_ - first_art_).sum();
    if (out.phase1_objective > options_.feasibility_tol) {
      out.status = LpStatus::Infeasible;
      out.iterations = iterations_;
      return out;
    }
    upper_.tail(ncols_ - first_art_).setZero();
    drive_out_artificials();
  }

  Vector cost = Vector::Zero(ncols_);
  cost.head(n_) = lp.c;
  if (!run_phase(cost)) {
    out.status = LpStatus::Unbounded;
    out.iterations = iterations_;
    return out;
  }

  Vector x = current_values();
  const Vector refined = refined_values();
  if (primal_violation(refined) <= primal_violation(x)) x = refined;

  out.status = LpStatus::Optimal;
  out.x = x.head(n_);
  out.objective = lp.c.dot(out.x);
  out.iterations = iterations_;
  return out;
}

}  // namespace

namespace {

// Folds rows with a single nonzero coefficient into variable bounds. Returns
// the bound gap when two bounds cross by more than the feasibility tolerance.
double fold_singleton_rows(const LpProblem& lp, LpProblem& reduced,
                           const LpOptions& options) {
  reduced.c = lp.c;
  reduced.lb = lp.lb;
  reduced.ub = lp.ub;
  const Index n = lp.num_vars();
  double gap = 0.0;

  auto keep_rows = [&](const Matrix& a, const Vector& b, bool equality,
                       Matrix& a_out, Vector& b_out) {
    std::vector<Index> kept;
    for (Index i = 0; i < a.rows(); ++i) {
      Index nonzero = -1;
      int count = 0;
      for (Index j = 0; j < n; ++j) {
        if (a(i, j) != 0.0) {
          nonzero = j;
          if (++count > 1) break;
        }
      }
      if (count > 1 || (count == 1 && std::abs(a(i, nonzero)) < 1e-9)) {
        kept.push_back(i);
        continue;
      }
      if (count == 0) {
        const double violation = equality ? std::abs(b[i]) : -b[i];
        gap = std::max(gap, violation);
        continue;
      }
      const double bound = b[i] / a(i, nonzero);
      if (equality || a(i, nonzero) > 0.0) {
        reduced.ub[nonzero] = std::min(reduced.ub[nonzero], bound);
      }
      if (equality || a(i, nonzero) < 0.0) {
        reduced.lb[nonzero] = std::max(reduced.lb[nonzero], bound);
      }
    }
    a_out.resize(static_cast<Index>(kept.size()), n);
    b_out.resize(static_cast<Index>(kept.size()));
    for (std::size_t r = 0; r < kept.size(); ++r) {
      a_out.row(static_cast<Index>(r)) = a.row(kept[r]);
      b_out[static_cast<Index>(r)] = b[kept[r]];
    }
  };
  keep_rows(lp.a_eq, lp.b_eq, true, reduced.a_eq, reduced.b_eq);
  keep_rows(lp.a_in, lp.b_in, false, reduced.a_in, reduced.b_in);

  for (Index j = 0; j < n; ++j) {
    if (reduced.lb[j] > reduced.ub[j]) {
      const double crossing = reduced.lb[j] - reduced.ub[j];
      gap = std::max(gap, crossing);
      // Within tolerance the variable is simply fixed.
      const double mid = 0.5 * (reduced.lb[j] + reduced.ub[j]);
      reduced.lb[j] = reduced.ub[j] = mid;
    }
  }
  return gap > options.feasibility_tol ? gap : 0.0;
}

}  // namespace

LpSolution solve_lp(const LpProblem& lp, const LpOptions& options) {
  lp.validate();
  LpProblem reduced;
  const double gap = fold_singleton_rows(lp, reduced, options);
  if (gap > 0.0) {
    LpSolution out;
    out.status = LpStatus::Infeasible;
    out.phase1_objective = gap;
    return out;
  }
  BoundedSimplex simplex(reduced, options);
  return simplex.solve(reduced);
}

}  // namespace tubeslp
