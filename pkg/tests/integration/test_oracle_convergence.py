"""
Integration tests for the finite-difference oracle.

A manufactured solution fixes the forcing, so errors of both schemes
and the discrete residual can be measured against a known field.
"""

import numpy as np
import pytest

from delay_heat_control.oracle.finite_difference import residual_fd, solve_fd
from delay_heat_control.oracle.models import FdConfig
from delay_heat_control.problem.models import ProblemData, ReducedProblem
from delay_heat_control.solution.models import Field

pytestmark = [pytest.mark.integration, pytest.mark.slow]

PROBLEM = ReducedProblem(a1sq=1.0, a2sq=0.3, c1=0.2, c2=-0.4, tau=0.5)
HORIZON = 1.0


def _g(t):
    return np.exp(-t) * (1.0 + t)


def _exact(x, t):
    return _g(t) * np.sin(x)


def _forcing(x, t):
    # u = g(t) sin x with g' = -t e^{-t}
    p = PROBLEM
    lagged = _g(t - p.tau)
    rate = -t * np.exp(-t)
    return np.sin(x) * (rate + p.a1sq * _g(t) + p.a2sq * lagged - p.c1 * _g(t) - p.c2 * lagged)


MANUFACTURED = ProblemData(history=_exact, forcing=_forcing)


def _error(field: Field) -> float:
    expected = _exact(field.xs[None, :], field.ts[:, None])
    return float(np.max(np.abs(field.values - expected)))


class TestManufacturedSolution:
    """Errors against u = e^{-t}(1 + t) sin x."""

    def test_implicit_euler_converges(self):
        """Test refining dt by 4 and h by 2 cuts the error by at least 1.8."""
        grids = ((10, PROBLEM.tau / 10), (20, PROBLEM.tau / 40), (40, PROBLEM.tau / 160))
        errors = []
        for nx, dt in grids:
            cfg = FdConfig(nx=nx, dt=dt, scheme="implicit-euler")
            errors.append(_error(solve_fd(PROBLEM, MANUFACTURED, None, cfg, HORIZON)))
        assert errors[0] / errors[1] >= 1.8
        assert errors[1] / errors[2] >= 1.8

    def test_crank_nicolson_accuracy(self):
        """Test the default scheme on a fine grid."""
        cfg = FdConfig(nx=100, dt=PROBLEM.tau / 1000)
        field = solve_fd(PROBLEM, MANUFACTURED, None, cfg, HORIZON)
        assert _error(field) <= 1e-3

    def test_residual_of_exact_field(self):
        """Test the centred residual of the sampled solution decreases with the grid."""
        residuals = []
        for size in (11, 21, 41):
            field = Field.from_function(
                _exact, np.linspace(0.0, np.pi, size), np.linspace(0.0, HORIZON, size)
            )
            residuals.append(residual_fd(field, PROBLEM, MANUFACTURED))
        assert residuals[0] / residuals[1] >= 1.8
        assert residuals[1] / residuals[2] >= 1.8


class TestCausality:
    """History values after s = t0 - tau cannot affect u before t0."""

    def test_late_history_change(self):
        """Test a bump on s in (-0.5, 0) leaves t <= 0.5 untouched at tau = 1."""
        problem = ReducedProblem(a1sq=1.0, a2sq=0.2, c1=0.1, c2=-0.3, tau=1.0)

        def bump(s):
            s = np.asarray(s, dtype=float)
            return np.where((s > -0.5) & (s < 0.0), np.sin(2.0 * np.pi * s) ** 2, 0.0)

        base = ProblemData(history=lambda x, s: np.sin(x) + 0.0 * s)
        perturbed = ProblemData(history=lambda x, s: np.sin(x) * (1.0 + bump(s)))
        cfg = FdConfig(nx=32, dt=problem.tau / 100)
        a = solve_fd(problem, base, None, cfg, 1.0)
        b = solve_fd(problem, perturbed, None, cfg, 1.0)
        early = a.ts <= 0.5 + 1e-12
        np.testing.assert_array_equal(a.values[early], b.values[early])
        assert np.max(np.abs(a.values[~early] - b.values[~early])) > 0.0
