#include "tubeslp/solver.hpp"

namespace tubeslp {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Fslp:
      return "FSLP";
    case Phase::PhaseI:
      return "PhaseI";
    case Phase::PhaseII:
      return "PhaseII";
    case Phase::Restoration:
      return "Restoration";
  }
  return "unknown";
}

std::string_view to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Running:
      return "Running";
    case SolverStatus::Converged:
      return "Converged";
    case SolverStatus::MaxIterations:
      return "MaxIterations";
    case SolverStatus::RadiusTooSmall:
      return "RadiusTooSmall";
    case SolverStatus::InfeasibleStationary:
      return "InfeasibleStationary";
    case SolverStatus::EvaluationError:
      return "EvaluationError";
  }
  return "unknown";
}

}  // namespace tubeslp
