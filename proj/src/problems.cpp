#include "tubeslp/problems.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tubeslp {
namespace {

void no_equalities(NlpProblem& p) {
  p.n_g = 0;
  p.g = [](const Vector&) { return Vector(0); };
  p.jac_g = [n = p.n_w](const Vector&) { return Matrix(0, n); };
}

void no_inequalities(NlpProblem& p) {
  p.n_h = 0;
  p.h = [](const Vector&) { return Vector(0); };
  p.jac_h = [n = p.n_w](const Vector&) { return Matrix(0, n); };
}

}  // namespace

NamedProblem make_parabola_example() {
  NamedProblem out;
  out.name = "parabola";
  NlpProblem& p = out.problem;
  p.n_w = 2;
  no_equalities(p);
  p.n_h = 2;
  p.f = [](const Vector& w) { return w[1]; };
  p.grad_f = [](const Vector&) { return Vector{{0.0, 1.0}}; };
  // w2 >= w1^2 and w2 >= 0.1 w1, negated into h <= 0.
  p.h = [](const Vector& w) {
    return Vector{{w[0] * w[0] - w[1], 0.1 * w[0] - w[1]}};
  };
  p.jac_h = [](const Vector& w) {
    Matrix j(2, 2);
    j << 2.0 * w[0], -1.0, 0.1, -1.0;
    return j;
  };
  out.default_start = Vector{{1.0, 3.0}};
  out.known_solution = Vector::Zero(2);
  out.known_objective = 0.0;
  p.known_solution = out.known_solution;
  return out;
}

NamedProblem make_sphere(int n) {
  if (n < 2) throw std::invalid_argument("sphere dimension must be >= 2");
  NamedProblem out;
  out.name = "sphere-" + std::to_string(n);
  NlpProblem& p = out.problem;
  p.n_w = n;
  p.n_g = 1;
  no_inequalities(p);
  p.f = [](const Vector& w) { return -w[0]; };
  p.grad_f = [n](const Vector&) {
    Vector grad = Vector::Zero(n);
    grad[0] = -1.0;
    return grad;
  };
  p.g = [](const Vector& w) { return Vector::Constant(1, w.squaredNorm() - 1.0); };
  p.jac_g = [](const Vector& w) { return Matrix(2.0 * w.transpose()); };

  out.default_start = Vector::Zero(n);
  out.default_start[0] = 0.5;
  out.default_start[1] = std::sqrt(1.0 - 0.5 * 0.5);
  Vector e1 = Vector::Zero(n);
  e1[0] = 1.0;
  out.known_solution = e1;
  out.known_objective = -1.0;
  p.known_solution = e1;
  return out;
}

NamedProblem make_cycling_example() {
  NamedProblem out;
  out.name = "cycling";
  NlpProblem& p = out.problem;
  p.n_w = 2;
  no_equalities(p);
  p.n_h = 2;
  p.f = [](const Vector& w) { return w[1]; };
  p.grad_f = [](const Vector&) { return Vector{{0.0, 1.0}}; };
  p.h = [](const Vector& w) {
    return Vector{{w[0] * w[0] + 0.0375 - w[1], w[1] - w[0]}};
  };
  p.jac_h = [](const Vector& w) {
    Matrix j(2, 2);
    j << 2.0 * w[0], -1.0, -1.0, 1.0;
    return j;
  };
  out.default_start = Vector{{-0.25, -0.9}};
  // Both constraints active: w1 = w2 and w1^2 - w1 + 0.0375 = 0.
  const double root = (1.0 - std::sqrt(0.85)) / 2.0;
  out.known_solution = Vector{{root, root}};
  out.known_objective = root;
  p.known_solution = out.known_solution;
  return out;
}

Vector l1_relaxed_point(const NamedProblem& original, const Vector& w) {
  const NlpProblem& p = original.problem;
  const Index n = p.n_w, ng = p.n_g, nh = p.n_h;
  Vector z = Vector::Zero(n + nh + 2 * ng);
  z.head(n) = w;
  if (nh > 0) z.segment(n, nh) = Vector(p.h(w)).cwiseMax(0.0);
  if (ng > 0) {
    const Vector g = p.g(w);
    z.segment(n + nh, ng) = g.cwiseMax(0.0);
    z.segment(n + nh + ng, ng) = (-g).cwiseMax(0.0);
  }
  return z;
}

NamedProblem make_l1_relaxed(const NamedProblem& original, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("penalty mu must be positive");
  const NlpProblem base = original.problem;
  const Index n = base.n_w, ng = base.n_g, nh = base.n_h;
  const Index ne = nh + 2 * ng;  // elastic count
  const Index total = n + ne;

  NamedProblem out;
  out.name = "l1-" + original.name;
  NlpProblem& p = out.problem;
  p.n_w = total;
  p.n_g = ng;
  p.n_h = nh + ne;

  p.f = [base, n, ne, mu](const Vector& z) {
    return base.f(z.head(n)) + mu * z.segment(n, ne).sum();
  };
  p.grad_f = [base, n, ne, mu](const Vector& z) {
    Vector grad(n + ne);
    grad.head(n) = base.grad_f(z.head(n));
    grad.tail(ne).setConstant(mu);
    return grad;
  };
  if (ng > 0) {
    p.g = [base, n, nh, ng](const Vector& z) {
      return Vector(base.g(z.head(n)) - z.segment(n + nh, ng) +
                    z.segment(n + nh + ng, ng));
    };
    p.jac_g = [base, n, nh, ng, total](const Vector& z) {
      Matrix j = Matrix::Zero(ng, total);
      j.leftCols(n) = base.jac_g(z.head(n));
      j.block(0, n + nh, ng, ng) = -Matrix::Identity(ng, ng);
      j.block(0, n + nh + ng, ng, ng) = Matrix::Identity(ng, ng);
      return j;
    };
  } else {
    no_equalities(p);
  }
  p.h = [base, n, nh, ne](const Vector& z) {
    Vector h(nh + ne);
    if (nh > 0) h.head(nh) = base.h(z.head(n)) - z.segment(n, nh);
    h.tail(ne) = -z.segment(n, ne);
    return h;
  };
  p.jac_h = [base, n, nh, ne, total](const Vector& z) {
    Matrix j = Matrix::Zero(nh + ne, total);
    if (nh > 0) {
      j.topLeftCorner(nh, n) = base.jac_h(z.head(n));
      j.block(0, n, nh, nh) = -Matrix::Identity(nh, nh);
    }
    j.bottomRightCorner(ne, ne) = -Matrix::Identity(ne, ne);
    return j;
  };
  if (!base.has_identity_projection()) {
    p.projection = Matrix::Zero(base.projection.rows(), total);
    p.projection.leftCols(n) = base.projection;
  }

  out.default_start = l1_relaxed_point(original, original.default_start);
  if (original.known_solution) {
    out.known_solution = l1_relaxed_point(original, *original.known_solution);
    p.known_solution = out.known_solution;
  }
  out.known_objective = original.known_objective;
  return out;
}

Rk4Sensitivity double_integrator_rk4(const Eigen::Vector2d& x, double u,
                                     double step) {
  using Vec2 = Eigen::Vector2d;
  using Sens = Eigen::Matrix<double, 2, 4>;  // columns: x1, x2, u, h
  // xdot = (x2, u)
  auto rhs = [](const Vec2& y, double control) { return Vec2(y[1], control); };
  Eigen::Matrix2d a;
  a << 0.0, 1.0, 0.0, 0.0;
  const Vec2 b(0.0, 1.0);

  Sens dx = Sens::Zero();
  dx(0, 0) = 1.0;
  dx(1, 1) = 1.0;
  Sens du = Sens::Zero();
  du.col(2) = b;
  Eigen::Matrix<double, 1, 4> dh = Eigen::Matrix<double, 1, 4>::Zero();
  dh(3) = 1.0;

  // Stage k_i = F(x + c_i h k_{i-1}, u) and its sensitivity.
  const Vec2 k1 = rhs(x, u);
  const Sens dk1 = a * dx + du;
  const Vec2 k2 = rhs(x + 0.5 * step * k1, u);
  const Sens dk2 = a * (dx + 0.5 * k1 * dh + 0.5 * step * dk1) + du;
  const Vec2 k3 = rhs(x + 0.5 * step * k2, u);
  const Sens dk3 = a * (dx + 0.5 * k2 * dh + 0.5 * step * dk2) + du;
  const Vec2 k4 = rhs(x + step * k3, u);
  const Sens dk4 = a * (dx + k3 * dh + step * dk3) + du;

  const Vec2 slope = (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
  const Sens dslope = (dk1 + 2.0 * dk2 + 2.0 * dk3 + dk4) / 6.0;
  const Sens dnext = dx + slope * dh + step * dslope;

  Rk4Sensitivity out;
  out.next = x + step * slope;
  out.d_state = dnext.leftCols<2>();
  out.d_control = dnext.col(2);
  out.d_step = dnext.col(3);
  return out;
}

namespace {

struct TocpLayout {
  int horizon;
  Index state(int k) const { return 2 * k; }
  Index control(int k) const { return 2 * (horizon + 1) + k; }
  Index time() const { return 3 * horizon + 2; }
  Index size() const { return 3 * horizon + 3; }
};

// Simulates the control sequence from rest and writes states into w.
void simulate(const TocpLayout& layout, Vector& w) {
  const double step = w[layout.time()] / layout.horizon;
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  w.segment<2>(layout.state(0)) = x;
  for (int k = 0; k < layout.horizon; ++k) {
    x = double_integrator_rk4(x, w[layout.control(k)], step).next;
    w.segment<2>(layout.state(k + 1)) = x;
  }
}

}  // namespace

NamedProblem make_double_integrator_tocp(int horizon, double distance,
                                         double v_max) {
  if (horizon < 5) throw std::invalid_argument("TOCP horizon must be >= 5");
  if (!(distance > 0.0)) throw std::invalid_argument("distance must be > 0");
  if (!(v_max > 0.0)) throw std::invalid_argument("v_max must be > 0");
  constexpr double kMinTime = 1e-3;
  const TocpLayout layout{horizon};
  const int N = horizon;

  NamedProblem out;
  {
    std::string d = std::to_string(distance);
    d.erase(d.find_last_not_of('0') + 1);
    if (!d.empty() && d.back() == '.') d.pop_back();
    out.name = "di-tocp-" + std::to_string(N) + "-" + d;
  }
  NlpProblem& p = out.problem;
  p.n_w = layout.size();
  p.n_g = 2 * N + 4;
  p.n_h = 2 * N + 2 * (N + 1) + 1;

  p.f = [layout](const Vector& w) { return w[layout.time()]; };
  p.grad_f = [layout](const Vector&) {
    Vector grad = Vector::Zero(layout.size());
    grad[layout.time()] = 1.0;
    return grad;
  };

  p.g = [layout, distance](const Vector& w) {
    const int n = layout.horizon;
    const double step = w[layout.time()] / n;
    Vector g(2 * n + 4);
    for (int k = 0; k < n; ++k) {
      const Eigen::Vector2d x = w.segment<2>(layout.state(k));
      const auto rk = double_integrator_rk4(x, w[layout.control(k)], step);
      g.segment<2>(2 * k) = w.segment<2>(layout.state(k + 1)) - rk.next;
    }
    g.segment<2>(2 * n) = w.segment<2>(layout.state(0));
    g[2 * n + 2] = w[layout.state(n)] - distance;
    g[2 * n + 3] = w[layout.state(n) + 1];
    return g;
  };
  p.jac_g = [layout](const Vector& w) {
    const int n = layout.horizon;
    const double step = w[layout.time()] / n;
    Matrix j = Matrix::Zero(2 * n + 4, layout.size());
    for (int k = 0; k < n; ++k) {
      const Eigen::Vector2d x = w.segment<2>(layout.state(k));
      const auto rk = double_integrator_rk4(x, w[layout.control(k)], step);
      j.block<2, 2>(2 * k, layout.state(k + 1)) = Eigen::Matrix2d::Identity();
      j.block<2, 2>(2 * k, layout.state(k)) = -rk.d_state;
      j.block<2, 1>(2 * k, layout.control(k)) = -rk.d_control;
      j.block<2, 1>(2 * k, layout.time()) = -rk.d_step / n;
    }
    j.block<2, 2>(2 * n, layout.state(0)) = Eigen::Matrix2d::Identity();
    j.block<2, 2>(2 * n + 2, layout.state(n)) = Eigen::Matrix2d::Identity();
    return j;
  };

  // Rows: u_k <= 1, -u_k <= 1, x2_k <= v_max, -x2_k <= v_max, T >= kMinTime.
  p.h = [layout, v_max](const Vector& w) {
    const int n = layout.horizon;
    Vector h(4 * n + 3);
    for (int k = 0; k < n; ++k) {
      const double u = w[layout.control(k)];
      h[2 * k] = u - 1.0;
      h[2 * k + 1] = -u - 1.0;
    }
    for (int k = 0; k <= n; ++k) {
      const double vel = w[layout.state(k) + 1];
      h[2 * n + 2 * k] = vel - v_max;
      h[2 * n + 2 * k + 1] = -vel - v_max;
    }
    h[4 * n + 2] = kMinTime - w[layout.time()];
    return h;
  };
  p.jac_h = [layout](const Vector&) {
    const int n = layout.horizon;
    Matrix j = Matrix::Zero(4 * n + 3, layout.size());
    for (int k = 0; k < n; ++k) {
      j(2 * k, layout.control(k)) = 1.0;
      j(2 * k + 1, layout.control(k)) = -1.0;
    }
    for (int k = 0; k <= n; ++k) {
      j(2 * n + 2 * k, layout.state(k) + 1) = 1.0;
      j(2 * n + 2 * k + 1, layout.state(k) + 1) = -1.0;
    }
    j(4 * n + 2, layout.time()) = -1.0;
    return j;
  };

  // Feasible start: symmetric accelerate/coast/decelerate profile over twice
  // the optimal time, scaled to cover the distance exactly.
  const double t_opt = 2.0 * std::sqrt(distance);
  Vector start = Vector::Zero(layout.size());
  start[layout.time()] = 2.0 * t_opt;
  for (int k = 0; k < N; ++k) {
    const int mirror = N - 1 - k;
    start[layout.control(k)] = k < mirror ? 1.0 : (k > mirror ? -1.0 : 0.0);
  }
  simulate(layout, start);
  const double scale = distance / start[layout.state(N)];
  for (int k = 0; k < N; ++k) start[layout.control(k)] *= scale;
  simulate(layout, start);
  out.default_start = start;

  // Bang-bang optimum; the switch falls on a grid point only for even N.
  if (N % 2 == 0 && std::sqrt(distance) <= v_max) {
    Vector sol = Vector::Zero(layout.size());
    sol[layout.time()] = t_opt;
    for (int k = 0; k < N; ++k) sol[layout.control(k)] = k < N / 2 ? 1.0 : -1.0;
    simulate(layout, sol);
    out.known_solution = sol;
    p.known_solution = sol;
  }
  if (std::sqrt(distance) <= v_max) out.known_objective = t_opt;
  return out;
}

namespace {

template <typename T>
bool parse_number(std::string_view text, T& value) {
  if (text.empty()) return false;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

}  // namespace

NamedProblem make_problem(std::string_view name) {
  if (name == "parabola") return make_parabola_example();
  if (name == "cycling") return make_cycling_example();
  if (name.starts_with("sphere-")) {
    int n = 0;
    if (parse_number(name.substr(7), n) && n >= 2) return make_sphere(n);
  }
  if (name.starts_with("di-tocp-")) {
    const std::string_view rest = name.substr(8);
    const auto dash = rest.find('-');
    int horizon = 0;
    double distance = 0.0;
    if (dash != std::string_view::npos &&
        parse_number(rest.substr(0, dash), horizon) &&
        parse_number(rest.substr(dash + 1), distance) && horizon >= 5 &&
        distance > 0.0) {
      return make_double_integrator_tocp(horizon, distance);
    }
  }
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

std::vector<std::string> registered_problem_patterns() {
  return {"parabola", "cycling", "sphere-<n>", "di-tocp-<N>-<d>"};
}

}  // namespace tubeslp
