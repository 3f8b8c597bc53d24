"""
Integration tests for the per-mode representation.

The delayed-exponential formula for y_n(t) is checked against direct
RK4 integration of the mode's delay equation on randomized problems.
This pins down the history argument t - tau, the sign of the lift in
Phi_n and the boundary source M_n.
"""

import numpy as np
import pytest

from delay_heat_control.problem.models import ProblemData, ReducedProblem
from delay_heat_control.spectral.coefficients import ModalCoefficients
from delay_heat_control.spectral.mode_solver import mode_solve, mode_solve_steps
from delay_heat_control.spectral.modes import ModeState

pytestmark = [pytest.mark.integration, pytest.mark.slow]


def _random_case(seed):
    rng = np.random.default_rng(seed)
    problem = ReducedProblem(
        a1sq=float(rng.uniform(0.5, 1.5)),
        a2sq=float(rng.uniform(0.0, 0.5)),
        c1=float(rng.uniform(-1.0, 1.0)),
        c2=float(rng.uniform(-1.0, 1.0)),
        tau=float(rng.uniform(0.3, 1.0)),
    )
    alpha, beta, gamma = rng.uniform(0.5, 1.5, size=3)
    mode = int(rng.integers(1, 7))
    horizon = float(rng.uniform(0.2, 3.0)) * problem.tau
    state = ModeState.from_problem(
        problem,
        mode,
        history_coeff=lambda s: alpha + beta * np.asarray(s, dtype=float),
        forcing_coeff=lambda t: gamma * (1.0 + 0.5 * np.sin(np.asarray(t, dtype=float))),
    )
    return problem, state, horizon


class TestRepresentationAgainstSteps:
    """mode_solve vs mode_solve_steps."""

    @pytest.mark.parametrize("seed", range(10))
    def test_randomized_modes(self, seed):
        problem, state, horizon = _random_case(seed)
        exact = mode_solve(state, problem.tau, horizon)
        stepped = mode_solve_steps(state, problem.tau, horizon, problem.tau / 1000)
        assert stepped == pytest.approx(exact, rel=1e-6, abs=1e-9)

    def test_boundary_data_through_the_mode(self):
        """Test Phi_n and F_n from inhomogeneous boundaries feed both solvers alike."""
        problem = ReducedProblem(a1sq=1.0, a2sq=0.2, c1=0.3, c2=-0.4, tau=0.5)
        data = ProblemData(
            history=lambda x, s: (1.0 + s) * (1.0 + x / np.pi) + np.sin(x),
            bnd_left=lambda t: 1.0 + t,
            bnd_right=lambda t: 2.0 * (1.0 + t),
        )
        coeffs = ModalCoefficients(data, problem, [1, 2])
        for n in (1, 2):
            row = coeffs.row(n)
            state = ModeState.from_problem(
                problem,
                n,
                history_coeff=lambda s, row=row: row.history(s)[0],
                forcing_coeff=lambda t, row=row: row.forcing(t)[0],
            )
            exact = mode_solve(state, problem.tau, 1.2)
            stepped = mode_solve_steps(state, problem.tau, 1.2, problem.tau / 1000)
            assert stepped == pytest.approx(exact, rel=1e-6, abs=1e-9)
