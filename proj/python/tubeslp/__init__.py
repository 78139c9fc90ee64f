"""Feasible and almost-feasible sequential linear programming."""

from ._core import (
    EvaluationError,
    IterationRecord,
    LpSolution,
    LpSolverError,
    LpStatus,
    NamedProblem,
    NlpProblem,
    Phase,
    RunSettings,
    SolverResult,
    SolverStatus,
    make_problem,
    registered_problem_patterns,
    solve,
    solve_lp,
    solve_named,
    sphere_max_radius,
)

__all__ = [
    "EvaluationError",
    "IterationRecord",
    "LpSolution",
    "LpSolverError",
    "LpStatus",
    "NamedProblem",
    "NlpProblem",
    "Phase",
    "RunSettings",
    "SolverResult",
    "SolverStatus",
    "make_problem",
    "registered_problem_patterns",
    "solve",
    "solve_lp",
    "solve_named",
    "sphere_max_radius",
]
