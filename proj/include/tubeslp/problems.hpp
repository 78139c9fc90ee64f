#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tubeslp/problem.hpp"

namespace tubeslp {

struct NamedProblem {
  std::string name;
  NlpProblem problem;
  Vector default_start;
  std::optional<Vector> known_solution;
  std::optional<double> known_objective;
};

/// min w2  s.t.  w2 >= w1^2,  w2 >= 0.1 w1.  Solution (0, 0), start (1, 3).
NamedProblem make_parabola_example();

/// min -w1  s.t.  sum(w_i^2) = 1.  Start (0.5, sqrt(0.75), 0, ..., 0).
NamedProblem make_sphere(int n);

/// min w2  s.t.  w2 >= w1^2 + 0.0375,  w1 >= w2.  Start (-0.25, -0.9).
NamedProblem make_cycling_example();

/// Elastic relaxation over (w, s, t_plus, t_minus):
///   min f(w) + mu (sum s + sum t_plus + sum t_minus)
///   s.t. g(w) - t_plus + t_minus = 0,  h(w) - s <= 0,  s, t >= 0.
NamedProblem make_l1_relaxed(const NamedProblem& original, double mu);

/// Point (w, s, t_plus, t_minus) of the relaxed problem with the smallest
/// elastics that make `w` feasible.
Vector l1_relaxed_point(const NamedProblem& original, const Vector& w);

/// Rest-to-rest time-optimal transfer of a double integrator over distance
/// `distance`, multiple shooting with RK4 and h = T/N.
/// Variables: x_0..x_N (position, velocity), u_0..u_{N-1}, T.
/// Constraints: RK4 continuity, x_0 = (0, 0), x_N = (distance, 0),
/// |u| <= 1, |velocity| <= v_max, T >= 1e-3.
NamedProblem make_double_integrator_tocp(int horizon, double distance,
                                         double v_max = 1.5);

/// Registry lookup: "parabola", "cycling", "sphere-<n>", "di-tocp-<N>-<d>".
/// Throws std::invalid_argument for unknown names.
NamedProblem make_problem(std::string_view name);

std::vector<std::string> registered_problem_patterns();

/// Explicit RK4 step of the double integrator with sensitivities.
struct Rk4Sensitivity {
  Eigen::Vector2d next;
  Eigen::Matrix2d d_state;
  Eigen::Vector2d d_control;
  Eigen::Vector2d d_step;
};

Rk4Sensitivity double_integrator_rk4(const Eigen::Vector2d& x, double u,
                                     double step);

}  // namespace tubeslp
