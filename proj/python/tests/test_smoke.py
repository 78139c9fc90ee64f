import math

import numpy as np
import pytest

import tubeslp


def test_parabola_fslp_reaches_origin():
    settings = tubeslp.RunSettings()
    settings.delta0 = 4.0
    result = tubeslp.solve_named("parabola", "fslp", settings)
    assert result.status == tubeslp.SolverStatus.Converged
    assert np.max(np.abs(result.w_final)) <= 1e-6
    assert result.trace[0].phase == tubeslp.Phase.FSLP


def test_cycling_afslp_converges():
    settings = tubeslp.RunSettings()
    settings.tau0 = 1.2
    result = tubeslp.solve_named("cycling", "afslp", settings)
    root = (1 - math.sqrt(0.85)) / 2
    assert result.status == tubeslp.SolverStatus.Converged
    assert np.allclose(result.w_final, [root, root], atol=1e-4)


def test_unknown_problem_raises():
    with pytest.raises(ValueError):
        tubeslp.make_problem("nosuch")


def test_lp_vertex():
    sol = tubeslp.solve_lp(
        c=np.array([-1.0, -1.0]),
        a_eq=np.zeros((0, 2)),
        b_eq=np.zeros(0),
        a_in=np.array([[1.0, 2.0]]),
        b_in=np.array([4.0]),
        lb=np.zeros(2),
        ub=np.array([3.0, 3.0]),
    )
    assert sol.status == tubeslp.LpStatus.Optimal
    assert np.allclose(sol.x, [3.0, 0.5])


def test_python_callbacks():
    # min w0 + w1  s.t.  w0^2 + w1^2 <= 2
    problem = tubeslp.NlpProblem(
        n_w=2,
        n_g=0,
        n_h=1,
        f=lambda w: w[0] + w[1],
        grad_f=lambda w: np.array([1.0, 1.0]),
        g=lambda w: np.zeros(0),
        h=lambda w: np.array([w[0] ** 2 + w[1] ** 2 - 2.0]),
        jac_g=lambda w: np.zeros((0, 2)),
        jac_h=lambda w: np.array([[2 * w[0], 2 * w[1]]]),
    )
    result = tubeslp.solve(problem, np.array([0.0, 0.0]), "afslp")
    assert result.status == tubeslp.SolverStatus.Converged
    assert np.allclose(result.w_final, [-1.0, -1.0], atol=1e-5)
    assert result.constraint_pair_evals >= len(result.trace)


def test_sphere_probe_positive():
    assert tubeslp.sphere_max_radius(2) > 0
