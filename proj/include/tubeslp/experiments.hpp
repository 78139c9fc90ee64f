#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tubeslp/afslp.hpp"
#include "tubeslp/fslp.hpp"
#include "tubeslp/problems.hpp"
#include "tubeslp/trace_io.hpp"

namespace tubeslp {

enum class Algorithm { Fslp, Afslp, AfslpLegacy };

std::string_view to_string(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Settings shared by the command-line front end and the experiments. Unset
/// optionals fall back to the defaults of the chosen algorithm.
struct RunSettings {
  double delta0 = 1.0;
  std::optional<double> tau0;
  double beta = 0.9;
  double sigma_switch = 0.1;
  double eps_f = 1e-7;
  double eps_o = 1e-7;
  int max_iter = 1000;
};

FslpConfig make_fslp_config(const RunSettings& settings);
AfslpConfig make_afslp_config(const RunSettings& settings, bool legacy);
double initial_tau(Algorithm algorithm, const RunSettings& settings);

struct TimedRun {
  SolverResult result;
  RunSummary summary;
};

/// Solves and times one run. With repeat > 1 the solve is repeated and the
/// wall time averaged; the returned result is from the first run.
TimedRun run_solver(const NamedProblem& problem, Algorithm algorithm,
                    const RunSettings& settings, const Vector& start,
                    int repeat = 1);

struct SphereProbeResult {
  int n = 0;
  double max_radius = 0.0;  // 0 if no radius above the floor converged
  int halvings = 0;
  int inner_count = 0;      // parametric LPs at the successful radius
};

/// Largest radius on the grid delta_start * 2^-j for which one outer step
/// from the canonical sphere start is projected back into {v <= tau}.
SphereProbeResult sphere_max_radius(int n, double delta_start = 10.0,
                                    double tau = 1e-8, int max_inner = 100,
                                    double delta_floor = 1e-12);

std::vector<int> default_sphere_sizes();

struct CyclingReport {
  SolverResult primary;    // afSLP from (-0.25, -0.9)
  SolverResult secondary;  // afSLP from (0.75, -0.4)
  SolverResult legacy;     // legacy mode from (-0.25, -0.9)
  bool primary_converged = false;
  bool secondary_converged = false;
  std::optional<Vector> secondary_first_accepted;
  int legacy_returns = 0;  // returns to the start after visiting (0.75, -0.4)
  bool legacy_cycled = false;
};

/// Accepted iterates in visiting order, starting with the initial point.
std::vector<Vector> accepted_iterates(const SolverResult& result);

/// Number of completed start -> via -> start loops in the iterate sequence.
int count_returns(const std::vector<Vector>& iterates, const Vector& start,
                  const Vector& via, double tol = 1e-9);

CyclingReport run_cycling_experiment(int legacy_iterations = 16);

/// FSLP at tau = 1e-8 followed by afSLP at each tau0 in the list.
std::vector<TimedRun> run_tau_sweep(const NamedProblem& problem,
                                    std::span<const double> tau_list,
                                    const RunSettings& settings,
                                    int repeat = 1);

std::vector<double> default_tau_list();

}  // namespace tubeslp
