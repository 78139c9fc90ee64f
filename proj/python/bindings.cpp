#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tubeslp/experiments.hpp"
#include "tubeslp/lp.hpp"
#include "tubeslp/problems.hpp"
#include "tubeslp/trace_io.hpp"

namespace py = pybind11;
using namespace tubeslp;

namespace {

Vector as_vector(const Vector& w) { return w; }

SolverResult solve_with(const NlpProblem& problem, const Vector& w0,
                        const std::string& algorithm,
                        const RunSettings& settings) {
  const auto alg = parse_algorithm(algorithm);
  if (!alg) throw std::invalid_argument("unknown algorithm: " + algorithm);
  if (*alg == Algorithm::Fslp) {
    return solve_fslp(problem, w0, make_fslp_config(settings));
  }
  return solve_afslp(problem, w0,
                     make_afslp_config(settings, *alg == Algorithm::AfslpLegacy));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Feasible and almost-feasible SLP solvers";

  py::register_exception<EvaluationError>(m, "EvaluationError",
                                          PyExc_RuntimeError);
  py::register_exception<LpSolverError>(m, "LpSolverError", PyExc_RuntimeError);

  py::enum_<LpStatus>(m, "LpStatus")
      .value("Optimal", LpStatus::Optimal)
      .value("Infeasible", LpStatus::Infeasible)
      .value("Unbounded", LpStatus::Unbounded);

  py::enum_<Phase>(m, "Phase")
      .value("FSLP", Phase::Fslp)
      .value("PhaseI", Phase::PhaseI)
      .value("PhaseII", Phase::PhaseII)
      .value("Restoration", Phase::Restoration);

  py::enum_<SolverStatus>(m, "SolverStatus")
      .value("Running", SolverStatus::Running)
      .value("Converged", SolverStatus::Converged)
      .value("MaxIterations", SolverStatus::MaxIterations)
      .value("RadiusTooSmall", SolverStatus::RadiusTooSmall)
      .value("InfeasibleStationary", SolverStatus::InfeasibleStationary)
      .value("EvaluationError", SolverStatus::EvaluationError);

  py::class_<LpSolution>(m, "LpSolution")
      .def_readonly("status", &LpSolution::status)
      .def_readonly("x", &LpSolution::x)
      .def_readonly("objective", &LpSolution::objective)
      .def_readonly("iterations", &LpSolution::iterations);

  m.def(
      "solve_lp",
      [](const Vector& c, const Matrix& a_eq, const Vector& b_eq,
         const Matrix& a_in, const Vector& b_in, const Vector& lb,
         const Vector& ub) {
        LpProblem lp{c, a_eq, b_eq, a_in, b_in, lb, ub};
        return solve_lp(lp);
      },
      py::arg("c"), py::arg("a_eq"), py::arg("b_eq"), py::arg("a_in"),
      py::arg("b_in"), py::arg("lb"), py::arg("ub"),
      "min c'x  s.t.  a_eq x = b_eq, a_in x <= b_in, lb <= x <= ub");

  py::class_<NlpProblem>(m, "NlpProblem")
      .def(py::init([](int n_w, int n_g, int n_h,
                       std::function<double(const Vector&)> f,
                       std::function<Vector(const Vector&)> grad_f,
                       std::function<Vector(const Vector&)> g,
                       std::function<Vector(const Vector&)> h,
                       std::function<Matrix(const Vector&)> jac_g,
                       std::function<Matrix(const Vector&)> jac_h) {
             NlpProblem p;
             p.n_w = n_w;
             p.n_g = n_g;
             p.n_h = n_h;
             p.f = std::move(f);
             p.grad_f = std::move(grad_f);
             p.g = std::move(g);
             p.h = std::move(h);
             p.jac_g = std::move(jac_g);
             p.jac_h = std::move(jac_h);
             p.validate();
             return p;
           }),
           py::arg("n_w"), py::arg("n_g"), py::arg("n_h"), py::arg("f"),
           py::arg("grad_f"), py::arg("g"), py::arg("h"), py::arg("jac_g"),
           py::arg("jac_h"))
      .def_readonly("n_w", &NlpProblem::n_w)
      .def_readonly("n_g", &NlpProblem::n_g)
      .def_readonly("n_h", &NlpProblem::n_h)
      .def("f", [](const NlpProblem& p, const Vector& w) { return p.f(w); })
      .def("g", [](const NlpProblem& p, const Vector& w) { return p.g(w); })
      .def("h", [](const NlpProblem& p, const Vector& w) { return p.h(w); })
      .def("jac_g",
           [](const NlpProblem& p, const Vector& w) { return p.jac_g(w); })
      .def("jac_h",
           [](const NlpProblem& p, const Vector& w) { return p.jac_h(w); })
      .def("infeasibility", [](const NlpProblem& p, const Vector& w) {
        return infeasibility(p.g(w), p.h(w));
      });

  py::class_<NamedProblem>(m, "NamedProblem")
      .def_readonly("name", &NamedProblem::name)
      .def_readonly("problem", &NamedProblem::problem)
      .def_property_readonly(
          "default_start", [](const NamedProblem& p) { return as_vector(p.default_start); })
      .def_readonly("known_solution", &NamedProblem::known_solution)
      .def_readonly("known_objective", &NamedProblem::known_objective);

  m.def("make_problem", &make_problem, py::arg("name"));
  m.def("registered_problem_patterns", &registered_problem_patterns);

  py::class_<RunSettings>(m, "RunSettings")
      .def(py::init<>())
      .def_readwrite("delta0", &RunSettings::delta0)
      .def_readwrite("tau0", &RunSettings::tau0)
      .def_readwrite("beta", &RunSettings::beta)
      .def_readwrite("sigma_switch", &RunSettings::sigma_switch)
      .def_readwrite("eps_f", &RunSettings::eps_f)
      .def_readwrite("eps_o", &RunSettings::eps_o)
      .def_readwrite("max_iter", &RunSettings::max_iter);

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("phase", &IterationRecord::phase)
      .def_readonly("delta", &IterationRecord::delta)
      .def_readonly("v", &IterationRecord::v)
      .def_readonly("f", &IterationRecord::f)
      .def_readonly("rho", &IterationRecord::rho)
      .def_readonly("tau", &IterationRecord::tau)
      .def_readonly("inner_count", &IterationRecord::inner_count)
      .def_readonly("accepted", &IterationRecord::accepted)
      .def_readonly("lp_status", &IterationRecord::lp_status)
      .def_readonly("w", &IterationRecord::w)
      .def("to_json", [](const IterationRecord& r, bool iterates) {
        return to_json(r, iterates).dump();
      }, py::arg("include_iterate") = false);

  py::class_<SolverResult>(m, "SolverResult")
      .def_readonly("w_final", &SolverResult::w_final)
      .def_readonly("f_final", &SolverResult::f_final)
      .def_readonly("v_final", &SolverResult::v_final)
      .def_readonly("status", &SolverResult::status)
      .def_readonly("outer_iterations", &SolverResult::outer_iterations)
      .def_readonly("trace", &SolverResult::trace)
      .def_readonly("message", &SolverResult::message)
      .def_property_readonly("constraint_pair_evals", [](const SolverResult& r) {
        return r.counters.n_constraint_pairs;
      })
      .def_property_readonly("jacobian_pair_evals", [](const SolverResult& r) {
        return r.counters.n_jacobian_pairs;
      });

  m.def("solve", &solve_with, py::arg("problem"), py::arg("w0"),
        py::arg("algorithm") = "afslp", py::arg("settings") = RunSettings{});
  m.def(
      "solve_named",
      [](const std::string& name, const std::string& algorithm,
         const RunSettings& settings) {
        const NamedProblem p = make_problem(name);
        return solve_with(p.problem, p.default_start, algorithm, settings);
      },
      py::arg("name"), py::arg("algorithm") = "afslp",
      py::arg("settings") = RunSettings{});

  m.def(
      "sphere_max_radius",
      [](int n, double delta_start, double tau, int max_inner) {
        return sphere_max_radius(n, delta_start, tau, max_inner).max_radius;
      },
      py::arg("n"), py::arg("delta_start") = 10.0, py::arg("tau") = 1e-8,
      py::arg("max_inner") = 100);
}
