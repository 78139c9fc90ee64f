#include "tubeslp/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

namespace tubeslp {
namespace {

nlohmann::json number_or_null(double value) {
  if (std::isnan(value)) return nullptr;
  if (value == kInf) return "+inf";
  if (value == -kInf) return "-inf";
  return value;
}

// Shortest representation that reads back to the same double.
std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace

RunSummary summarize(std::string problem, std::string algorithm,
                     const SolverResult& result, double wall_time_s,
                     double tau_0, double delta_0) {
  RunSummary s;
  s.problem = std::move(problem);
  s.algorithm = std::move(algorithm);
  s.status = std::string(to_string(result.status));
  s.outer_iterations = result.outer_iterations;
  s.constraint_pair_evals = result.counters.n_constraint_pairs;
  s.jacobian_pair_evals = result.counters.n_jacobian_pairs;
  s.wall_time_s = wall_time_s;
  s.f_final = result.f_final;
  s.v_final = result.v_final;
  s.tau_0 = tau_0;
  s.delta_0 = delta_0;
  return s;
}

std::string run_summary_csv_header() {
  return "problem,algorithm,status,outer_iterations,constraint_pair_evals,"
         "jacobian_pair_evals,wall_time_s,f_final,v_final,tau_0,delta_0";
}

std::string to_csv_row(const RunSummary& s) {
  std::ostringstream os;
  os << s.problem << ',' << s.algorithm << ',' << s.status << ','
     << s.outer_iterations << ',' << s.constraint_pair_evals << ','
     << s.jacobian_pair_evals << ',' << format_double(s.wall_time_s) << ','
     << format_double(s.f_final) << ',' << format_double(s.v_final) << ','
     << format_double(s.tau_0) << ',' << format_double(s.delta_0);
  return os.str();
}

nlohmann::json to_json(const IterationRecord& r, bool include_iterate) {
  nlohmann::json j;
  j["k"] = r.k;
  j["phase"] = std::string(to_string(r.phase));
  j["delta"] = number_or_null(r.delta);
  j["v"] = number_or_null(r.v);
  j["f"] = number_or_null(r.f);
  j["rho"] = number_or_null(r.rho);
  j["tau"] = number_or_null(r.tau);
  j["inner_count"] = r.inner_count;
  j["accepted"] = r.accepted;
  j["lp_status"] = std::string(to_string(r.lp_status));
  j["predicted"] = number_or_null(r.predicted);
  j["trial_v"] = number_or_null(r.trial_v);
  j["step_norm"] = number_or_null(r.step_norm);
  j["constraint_evals"] = r.constraint_evals;
  j["jacobian_evals"] = r.jacobian_evals;
  if (include_iterate) {
    j["w"] = std::vector<double>(r.w.data(), r.w.data() + r.w.size());
  }
  return j;
}

void write_trace_jsonl(std::ostream& out,
                       const std::vector<IterationRecord>& trace,
                       bool include_iterate) {
  for (const auto& record : trace) {
    out << to_json(record, include_iterate).dump() << '\n';
  }
}

double json_number(const nlohmann::json& value) {
  if (value.is_null()) return kNotComputed;
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    throw std::invalid_argument("unexpected string in numeric field: " + s);
  }
  return value.get<double>();
}

int exit_code(SolverStatus status) {
  switch (status) {
    case SolverStatus::Converged:
      return 0;
    case SolverStatus::Running:
    case SolverStatus::MaxIterations:
    case SolverStatus::RadiusTooSmall:
      return 2;
    case SolverStatus::InfeasibleStationary:
      return 3;
    case SolverStatus::EvaluationError:
      return 5;
  }
  return 2;
}

}  // namespace tubeslp
