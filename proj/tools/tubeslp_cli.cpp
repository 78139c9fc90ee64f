// Command-line front end: single solves and the three experiments.
#include <filesystem>
#include <iomanip>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tubeslp/experiments.hpp"
#include "tubeslp/trace_io.hpp"

namespace {

using namespace tubeslp;

constexpr int kBadArguments = 4;
constexpr int kRuntimeError = 5;

struct Options {
  std::string problem;
  std::string algorithm = "afslp";
  RunSettings settings;
  double tau0 = 0.0;
  std::string log_path;
  std::string summary_path;
  int repeat = 1;
  bool log_iterates = false;
  std::vector<int> n_list = default_sphere_sizes();
  std::vector<double> tau_list = default_tau_list();
};

void add_run_flags(CLI::App* app, Options& o) {
  app->add_option("--delta0", o.settings.delta0, "initial trust-region radius");
  app->add_option("--tau0", o.tau0, "initial tube width (tau for fslp)");
  app->add_option("--beta", o.settings.beta, "tube shrink factor");
  app->add_option("--sigma-switch", o.settings.sigma_switch,
                  "switching-condition constant");
  app->add_option("--eps-f", o.settings.eps_f, "feasibility tolerance");
  app->add_option("--eps-o", o.settings.eps_o, "optimality tolerance");
  app->add_option("--max-iter", o.settings.max_iter, "outer iteration limit");
  app->add_option("--log", o.log_path, "JSONL trace output");
  app->add_option("--summary", o.summary_path, "CSV summary output");
  app->add_option("--repeat", o.repeat, "repetitions for wall-time averaging")
      ->check(CLI::PositiveNumber);
  app->add_flag("--log-iterates", o.log_iterates, "include w in trace records");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

void write_trace(const std::string& path, const SolverResult& result,
                 bool iterates) {
  if (path.empty()) return;
  auto out = open_output(path);
  write_trace_jsonl(out, result.trace, iterates);
}

// "runs/trace.jsonl" + "legacy" -> "runs/trace.legacy.jsonl"
std::string tagged_path(const std::string& path, const std::string& tag) {
  const std::filesystem::path p(path);
  std::filesystem::path name = p.stem();
  name += "." + tag;
  name += p.extension();
  return (p.parent_path() / name).string();
}

void emit_csv(const std::string& path, const std::string& header,
              const std::vector<std::string>& rows) {
  if (path.empty()) {
    std::cout << header << '\n';
    for (const auto& r : rows) std::cout << r << '\n';
    return;
  }
  auto out = open_output(path);
  out << header << '\n';
  for (const auto& r : rows) out << r << '\n';
}

int cmd_solve(const Options& o) {
  const auto algorithm = parse_algorithm(o.algorithm);
  if (!algorithm) {
    std::cerr << "unknown algorithm: " << o.algorithm << '\n';
    return kBadArguments;
  }
  NamedProblem problem;
  try {
    problem = make_problem(o.problem);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kBadArguments;
  }
  const TimedRun run = run_solver(problem, *algorithm, o.settings,
                                  problem.default_start, o.repeat);
  write_trace(o.log_path, run.result, o.log_iterates);
  emit_csv(o.summary_path, run_summary_csv_header(),
           {to_csv_row(run.summary)});
  std::cerr << problem.name << ": " << to_string(run.result.status) << " after "
            << run.result.outer_iterations << " iterations";
  if (!run.result.message.empty()) std::cerr << " (" << run.result.message << ")";
  std::cerr << '\n';
  return exit_code(run.result.status);
}

int cmd_sphere(const Options& o, bool delta_given, bool tau_given) {
  const double delta_start = delta_given ? o.settings.delta0 : 10.0;
  const double tau = tau_given ? o.tau0 : 1e-8;
  for (int n : o.n_list) {
    if (n < 2) {
      std::cerr << "--n-list entries must be at least 2\n";
      return kBadArguments;
    }
  }
  std::vector<std::string> rows;
  for (int n : o.n_list) {
    const SphereProbeResult r = sphere_max_radius(n, delta_start, tau);
    std::ostringstream row;
    row << r.n << ',' << std::setprecision(17) << r.max_radius;
    rows.push_back(row.str());
    std::cerr << "n = " << n << ": max converging radius " << r.max_radius
              << '\n';
  }
  emit_csv(o.summary_path, "n,max_converging_radius", rows);
  return 0;
}

int cmd_cycling(const Options& o) {
  const CyclingReport rep = run_cycling_experiment();
  if (!o.log_path.empty()) {
    write_trace(tagged_path(o.log_path, "afslp-a"), rep.primary, o.log_iterates);
    write_trace(tagged_path(o.log_path, "afslp-b"), rep.secondary,
                o.log_iterates);
    write_trace(tagged_path(o.log_path, "legacy"), rep.legacy, o.log_iterates);
  }
  const auto& rp = rep.primary;
  const auto& rs = rep.secondary;
  std::cout << std::setprecision(10);
  std::cout << "afslp start (-0.25,-0.9): " << to_string(rp.status) << " w = ("
            << rp.w_final(0) << ", " << rp.w_final(1) << ") after "
            << rp.outer_iterations << " iterations\n";
  std::cout << "afslp start (0.75,-0.4): " << to_string(rs.status) << " w = ("
            << rs.w_final(0) << ", " << rs.w_final(1) << ") after "
            << rs.outer_iterations << " iterations\n";
  if (rep.secondary_first_accepted) {
    const Vector& w = *rep.secondary_first_accepted;
    std::cout << "second start, first accepted iterate: (" << w(0) << ", "
              << w(1) << ")\n";
  }
  std::cout << "legacy returns to start: " << rep.legacy_returns << '\n';
  const bool converged = rep.primary_converged && rep.secondary_converged;
  std::cout << "verdict: afslp converged (both) = "
            << (converged ? "yes" : "no")
            << ", legacy cycled = " << (rep.legacy_cycled ? "yes" : "no")
            << '\n';
  return converged && rep.legacy_cycled ? 0 : 2;
}

int cmd_tau_sweep(const Options& o) {
  NamedProblem problem;
  try {
    problem = make_problem(o.problem.empty() ? "di-tocp-40-1" : o.problem);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kBadArguments;
  }
  const auto rows = run_tau_sweep(problem, o.tau_list, o.settings, o.repeat);
  std::vector<std::string> lines;
  bool all_converged = true;
  for (const auto& r : rows) {
    lines.push_back(to_csv_row(r.summary));
    all_converged &= r.result.status == SolverStatus::Converged;
  }
  emit_csv(o.summary_path, run_summary_csv_header(), lines);
  if (!o.log_path.empty()) {
    for (const auto& r : rows) {
      std::ostringstream tag;
      tag << r.summary.algorithm << "-tau" << r.summary.tau_0;
      write_trace(tagged_path(o.log_path, tag.str()), r.result, o.log_iterates);
    }
  }
  return all_converged ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feasible and almost-feasible SLP solvers"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "run one solve");
  solve->add_option("--problem", o.problem, "registered problem name")
      ->required();
  solve->add_option("--algorithm", o.algorithm, "fslp | afslp | afslp-legacy");
  add_run_flags(solve, o);

  auto* experiment = app.add_subcommand("experiment", "run an experiment");
  experiment->require_subcommand(1);
  auto* sphere = experiment->add_subcommand("sphere", "max radius probe");
  sphere->add_option("--n-list", o.n_list, "sphere dimensions")->delimiter(',');
  add_run_flags(sphere, o);
  auto* cycling = experiment->add_subcommand("cycling", "cycling regression");
  add_run_flags(cycling, o);
  auto* sweep = experiment->add_subcommand("tau-sweep", "tube width sweep");
  sweep->add_option("--problem", o.problem, "registered problem name");
  sweep->add_option("--tau-list", o.tau_list, "initial tube widths")
      ->delimiter(',');
  add_run_flags(sweep, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadArguments;
  }

  auto tau_given = [&](CLI::App* sub) { return sub->count("--tau0") > 0; };
  try {
    if (*solve) {
      if (tau_given(solve)) o.settings.tau0 = o.tau0;
      return cmd_solve(o);
    }
    if (*sphere) {
      return cmd_sphere(o, sphere->count("--delta0") > 0, tau_given(sphere));
    }
    if (*cycling) return cmd_cycling(o);
    if (*sweep) {
      if (tau_given(sweep)) o.settings.tau0 = o.tau0;
      return cmd_tau_sweep(o);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kBadArguments;
}
