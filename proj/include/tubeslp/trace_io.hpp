#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tubeslp/solver.hpp"

namespace tubeslp {

/// One CSV row per solve. Columns follow the field order.
struct RunSummary {
  std::string problem;
  std::string algorithm;
  std::string status;
  int outer_iterations = 0;
  std::int64_t constraint_pair_evals = 0;
  std::int64_t jacobian_pair_evals = 0;
  double wall_time_s = 0.0;
  double f_final = 0.0;
  double v_final = 0.0;
  double tau_0 = 0.0;
  double delta_0 = 0.0;
};

RunSummary summarize(std::string problem, std::string algorithm,
                     const SolverResult& result, double wall_time_s,
                     double tau_0, double delta_0);

std::string run_summary_csv_header();
std::string to_csv_row(const RunSummary& summary);

/// JSON object keyed by the IterationRecord field names. Sentinel ratios are
/// written as the strings "+inf" / "-inf" and missing values as null. The
/// iterate `w` is included only on request.
nlohmann::json to_json(const IterationRecord& record, bool include_iterate);

void write_trace_jsonl(std::ostream& out,
                       const std::vector<IterationRecord>& trace,
                       bool include_iterate);

/// Reads a number written by to_json, mapping the sentinel strings back.
double json_number(const nlohmann::json& value);

/// 0 converged, 2 iteration/radius failure, 3 infeasible stationary point,
/// 5 evaluation error. (4 is reserved for bad command-line arguments.)
int exit_code(SolverStatus status);

}  // namespace tubeslp
