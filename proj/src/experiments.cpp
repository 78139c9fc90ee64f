#include "tubeslp/experiments.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace tubeslp {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Fslp:
      return "fslp";
    case Algorithm::Afslp:
      return "afslp";
    case Algorithm::AfslpLegacy:
      return "afslp-legacy";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "fslp") return Algorithm::Fslp;
  if (name == "afslp") return Algorithm::Afslp;
  if (name == "afslp-legacy") return Algorithm::AfslpLegacy;
  return std::nullopt;
}

FslpConfig make_fslp_config(const RunSettings& s) {
  FslpConfig c;
  c.delta0 = s.delta0;
  c.tau = s.tau0.value_or(c.tau);
  c.sigma_outer = s.eps_o;
  c.max_outer = s.max_iter;
  return c;
}

AfslpConfig make_afslp_config(const RunSettings& s, bool legacy) {
  AfslpConfig c;
  c.delta0 = s.delta0;
  c.tau0 = s.tau0.value_or(c.tau0);
  c.beta = s.beta;
  c.sigma_switch = s.sigma_switch;
  c.eps_f = s.eps_f;
  c.eps_o = s.eps_o;
  c.max_outer = s.max_iter;
  c.legacy = legacy;
  return c;
}

double initial_tau(Algorithm algorithm, const RunSettings& s) {
  if (algorithm == Algorithm::Fslp) return make_fslp_config(s).tau;
  return make_afslp_config(s, algorithm == Algorithm::AfslpLegacy).tau0;
}

namespace {

SolverResult solve_once(const NamedProblem& p, Algorithm algorithm,
                        const RunSettings& s, const Vector& start) {
  if (algorithm == Algorithm::Fslp) {
    return solve_fslp(p.problem, start, make_fslp_config(s));
  }
  return solve_afslp(p.problem, start,
                     make_afslp_config(s, algorithm == Algorithm::AfslpLegacy));
}

}  // namespace

TimedRun run_solver(const NamedProblem& problem, Algorithm algorithm,
                    const RunSettings& settings, const Vector& start,
                    int repeat) {
  if (repeat < 1) throw std::invalid_argument("repeat must be at least 1");
  using clock = std::chrono::steady_clock;
  TimedRun run;
  double total = 0.0;
  for (int i = 0; i < repeat; ++i) {
    const auto t0 = clock::now();
    SolverResult r = solve_once(problem, algorithm, settings, start);
    total += std::chrono::duration<double>(clock::now() - t0).count();
    if (i == 0) run.result = std::move(r);
  }
  run.summary = summarize(problem.name, std::string(to_string(algorithm)),
                          run.result, total / repeat,
                          initial_tau(algorithm, settings), settings.delta0);
  return run;
}

SphereProbeResult sphere_max_radius(int n, double delta_start, double tau,
                                    int max_inner, double delta_floor) {
  if (n < 2) throw std::invalid_argument("sphere probe needs n >= 2");
  const NamedProblem sphere = make_sphere(n);
  FeasIterParams params;
  params.max_inner = max_inner;

  SphereProbeResult out;
  out.n = n;
  double delta = delta_start;
  while (delta >= delta_floor) {
    Evaluator ev(sphere.problem);
    const Linearization lin = ev.linearize(sphere.default_start);
    const LpSolution sol =
        solve_lp(build_trust_region_lp(lin, delta, sphere.problem));
    if (sol.status == LpStatus::Optimal) {
      const Vector w_bar = sphere.default_start + sol.x;
      const FeasIterOutcome fi =
          feas_iterations(ev, lin, w_bar, delta, tau, params);
      if (fi.success) {
        out.max_radius = delta;
        out.inner_count = fi.inner_count;
        return out;
      }
    }
    delta *= 0.5;
    ++out.halvings;
  }
  return out;
}

std::vector<int> default_sphere_sizes() {
  return {2, 5, 10, 20, 50, 100, 200, 500};
}

std::vector<Vector> accepted_iterates(const SolverResult& result) {
  std::vector<Vector> out;
  const auto& trace = result.trace;
  if (trace.empty()) {
    out.push_back(result.w_final);
    return out;
  }
  out.push_back(trace.front().w);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!trace[i].accepted) continue;
    out.push_back(i + 1 < trace.size() ? trace[i + 1].w : result.w_final);
  }
  return out;
}

int count_returns(const std::vector<Vector>& iterates, const Vector& start,
                  const Vector& via, double tol) {
  auto near = [tol](const Vector& a, const Vector& b) {
    return a.size() == b.size() && (a - b).lpNorm<Eigen::Infinity>() <= tol;
  };
  int returns = 0;
  bool seen_via = false;
  for (const Vector& w : iterates) {
    if (near(w, via)) {
      seen_via = true;
    } else if (seen_via && near(w, start)) {
      ++returns;
      seen_via = false;
    }
  }
  return returns;
}

CyclingReport run_cycling_experiment(int legacy_iterations) {
  const NamedProblem cyc = make_cycling_example();
  const Vector start_a{{-0.25, -0.9}};
  const Vector start_b{{0.75, -0.4}};
  const Vector target = Vector::Constant(2, (1.0 - std::sqrt(0.85)) / 2.0);

  AfslpConfig cfg;
  cfg.tau0 = 1.2;
  cfg.beta = 0.9;
  cfg.delta0 = 1.0;

  CyclingReport rep;
  rep.primary = solve_afslp(cyc.problem, start_a, cfg);
  rep.secondary = solve_afslp(cyc.problem, start_b, cfg);

  auto near_target = [&](const SolverResult& r) {
    return r.status == SolverStatus::Converged &&
           (r.w_final - target).lpNorm<Eigen::Infinity>() <= 1e-4;
  };
  rep.primary_converged = near_target(rep.primary);
  rep.secondary_converged = near_target(rep.secondary);
  const auto second_path = accepted_iterates(rep.secondary);
  if (second_path.size() > 1) rep.secondary_first_accepted = second_path[1];

  AfslpConfig legacy;
  legacy.tau0 = 1.0;
  legacy.delta0 = 1.0;
  legacy.legacy = true;
  legacy.max_outer = legacy_iterations;
  rep.legacy = solve_afslp(cyc.problem, start_a, legacy);
  rep.legacy_returns =
      count_returns(accepted_iterates(rep.legacy), start_a, start_b);
  rep.legacy_cycled = rep.legacy_returns >= 1;
  return rep;
}

std::vector<TimedRun> run_tau_sweep(const NamedProblem& problem,
                                    std::span<const double> tau_list,
                                    const RunSettings& settings, int repeat) {
  std::vector<TimedRun> rows;
  RunSettings fslp = settings;
  fslp.tau0 = 1e-8;
  rows.push_back(run_solver(problem, Algorithm::Fslp, fslp,
                            problem.default_start, repeat));
  for (double tau : tau_list) {
    RunSettings s = settings;
    s.tau0 = tau;
    rows.push_back(run_solver(problem, Algorithm::Afslp, s,
                              problem.default_start, repeat));
  }
  return rows;
}

std::vector<double> default_tau_list() {
  return {1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
}

}  // namespace tubeslp
