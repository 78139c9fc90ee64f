#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "tubeslp/experiments.hpp"
#include "tubeslp/trace_io.hpp"

namespace tubeslp {
namespace {

TEST(TraceIo, RecordKeysAndSentinels) {
  IterationRecord r;
  r.k = 3;
  r.phase = Phase::Restoration;
  r.delta = 0.5;
  r.rho = kInf;
  r.w = Vector{{1.0, 2.0}};
  const auto j = to_json(r, false);
  EXPECT_EQ(j["phase"], "Restoration");
  EXPECT_EQ(j["rho"], "+inf");
  EXPECT_TRUE(j["tau"].is_null());
  EXPECT_FALSE(j.contains("w"));
  for (const char* key : {"k", "phase", "delta", "v", "f", "rho", "tau",
                          "inner_count", "accepted", "lp_status"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  r.rho = -kInf;
  const auto j2 = to_json(r, true);
  EXPECT_EQ(json_number(j2["rho"]), -kInf);
  EXPECT_EQ(j2["w"].size(), 2u);
  EXPECT_TRUE(std::isnan(json_number(j2["tau"])));
}

TEST(TraceIo, CsvLayout) {
  EXPECT_EQ(run_summary_csv_header(),
            "problem,algorithm,status,outer_iterations,constraint_pair_evals,"
            "jacobian_pair_evals,wall_time_s,f_final,v_final,tau_0,delta_0");
  RunSummary s;
  s.problem = "parabola";
  s.algorithm = "fslp";
  s.status = "Converged";
  s.outer_iterations = 11;
  s.constraint_pair_evals = 150;
  s.tau_0 = 1e-8;
  s.delta_0 = 4;
  const std::string row = to_csv_row(s);
  EXPECT_EQ(row.rfind("parabola,fslp,Converged,11,150,0,", 0), 0u);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 10);
}

TEST(TraceIo, ExitCodesTotal) {
  EXPECT_EQ(exit_code(SolverStatus::Converged), 0);
  EXPECT_EQ(exit_code(SolverStatus::MaxIterations), 2);
  EXPECT_EQ(exit_code(SolverStatus::RadiusTooSmall), 2);
  EXPECT_EQ(exit_code(SolverStatus::InfeasibleStationary), 3);
  EXPECT_EQ(exit_code(SolverStatus::EvaluationError), 5);
}

TEST(TraceIo, ReplayReproducesLoggedInfeasibility) {
  for (const char* name : {"cycling", "parabola", "di-tocp-10-1"}) {
    const NamedProblem p = make_problem(name);
    for (Algorithm alg : {Algorithm::Afslp, Algorithm::Fslp}) {
      if (alg == Algorithm::Fslp && std::string(name) == "cycling") continue;
      RunSettings s;
      const TimedRun run = run_solver(p, alg, s, p.default_start);
      std::stringstream buf;
      write_trace_jsonl(buf, run.result.trace, true);
      std::string line;
      std::int64_t cons = 0, jacs = 0;
      int expected_k = 0;
      while (std::getline(buf, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["k"].get<int>(), expected_k++);
        Vector w(j["w"].size());
        for (Index i = 0; i < w.size(); ++i) w(i) = j["w"][i].get<double>();
        const double v = infeasibility(p.problem.g(w), p.problem.h(w));
        EXPECT_NEAR(v, json_number(j["v"]), 1e-12) << name;
        cons += j["constraint_evals"].get<std::int64_t>();
        jacs += j["jacobian_evals"].get<std::int64_t>();
      }
      EXPECT_EQ(expected_k, run.summary.outer_iterations);
      EXPECT_EQ(cons, run.summary.constraint_pair_evals) << name;
      EXPECT_EQ(jacs, run.summary.jacobian_pair_evals) << name;
    }
  }
}

TEST(Experiments, AlgorithmNames) {
  for (Algorithm a : {Algorithm::Fslp, Algorithm::Afslp, Algorithm::AfslpLegacy}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_FALSE(parse_algorithm("sqp").has_value());
}

TEST(Experiments, DeterministicCounters) {
  const NamedProblem p = make_problem("di-tocp-10-1");
  RunSettings s;
  s.tau0 = 1e-4;
  const TimedRun a = run_solver(p, Algorithm::Afslp, s, p.default_start, 3);
  const TimedRun b = run_solver(p, Algorithm::Afslp, s, p.default_start, 1);
  EXPECT_EQ(a.summary.constraint_pair_evals, b.summary.constraint_pair_evals);
  EXPECT_EQ(a.summary.jacobian_pair_evals, b.summary.jacobian_pair_evals);
  EXPECT_EQ(a.summary.outer_iterations, b.summary.outer_iterations);
  EXPECT_EQ(a.result.w_final, b.result.w_final);
}

TEST(Experiments, SphereProbe) {
  const SphereProbeResult two = sphere_max_radius(2);
  EXPECT_GT(two.max_radius, 0.0);
  EXPECT_LE(two.max_radius, 10.0);
  EXPECT_THROW(sphere_max_radius(1), std::invalid_argument);
}

TEST(Experiments, CountReturns) {
  const Vector a{{0.0}}, b{{1.0}};
  const std::vector<Vector> path{a, b, a, b, a, a, b};
  EXPECT_EQ(count_returns(path, a, b), 2);
  EXPECT_EQ(count_returns({a, a, a}, a, b), 0);
}

TEST(Experiments, TauSweepRows) {
  const NamedProblem p = make_problem("di-tocp-10-1");
  const std::vector<double> taus{1e-4, 1e-3};
  const auto rows = run_tau_sweep(p, taus, RunSettings{});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].summary.algorithm, "fslp");
  EXPECT_EQ(rows[0].summary.tau_0, 1e-8);
  EXPECT_EQ(rows[2].summary.tau_0, 1e-3);
  for (const auto& r : rows) {
    EXPECT_EQ(r.summary.status, "Converged");
    EXPECT_LE(r.summary.v_final, 1e-7);
  }
}

}  // namespace
}  // namespace tubeslp
