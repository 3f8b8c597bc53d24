"""Unit tests for the coefficient decay heuristic."""

import math

import numpy as np
import pytest

from delay_heat_control.problem.models import ProblemData, ReducedProblem
from delay_heat_control.solution.regularity import decay_exponent, regularity_check


class TestDecayExponent:
    """Log-log fit."""

    def test_power_law(self):
        """Test |c_n| = n^-2 gives exponent 2."""
        modes = np.arange(4.0, 12.0)
        assert decay_exponent(modes, modes**-2.0, 1e-14) == pytest.approx(2.0, rel=1e-10)

    def test_below_floor_is_resolved(self):
        """Test fewer than three magnitudes above the floor give inf."""
        modes = np.arange(1.0, 6.0)
        magnitudes = np.array([1.0, 1e-3, 1e-16, 1e-17, 0.0])
        assert decay_exponent(modes, magnitudes, 1e-10) == math.inf


class TestRegularityCheck:
    """Verdicts on representative data."""

    def test_smooth_data_passes(self, heat_problem, sine_history):
        """Test a single sine mode is fully resolved."""
        report = regularity_check(sine_history, heat_problem, horizon=1.0, truncation=16, delta=0.5)
        assert report.passed
        assert report.horizon_windows == 1
        assert all(math.isinf(c.exponent) for c in report.checks)

    def test_rough_history_warns(self):
        """Test a parabola with n^-3 coefficients misses the history conditions."""
        problem = ReducedProblem(a1sq=1.0, tau=0.5)
        data = ProblemData(history=lambda x, s: x * (np.pi - x) + 0.0 * s)
        report = regularity_check(data, problem, horizon=1.5, truncation=24, delta=0.5)
        assert report.verdict == "warn"
        assert report.horizon_windows == 3
        labels = [c.label for c in report.warnings]
        assert "Phi" in labels
        phi = next(c for c in report.checks if c.label == "Phi")
        assert phi.exponent == pytest.approx(3.0, abs=0.3)

    def test_one_forcing_window_per_delay(self, heat_problem):
        """Test three forcing checks per window k = 1..m."""
        report = regularity_check(
            ProblemData.zero(), heat_problem, horizon=2.5, truncation=8, delta=0.0
        )
        windows = sorted({c.window for c in report.checks if c.window is not None})
        assert windows == [1, 2, 3]
        assert len(report.checks) == 4 + 3 * 3

    def test_rejects_few_modes(self, heat_problem, sine_history):
        """Test the fit needs at least eight modes."""
        with pytest.raises(ValueError, match="at least 8 modes"):
            regularity_check(sine_history, heat_problem, horizon=1.0, truncation=7, delta=0.5)

    def test_rejects_non_positive_horizon(self, heat_problem, sine_history):
        """Test T must be positive."""
        with pytest.raises(ValueError, match="horizon"):
            regularity_check(sine_history, heat_problem, horizon=0.0, truncation=8, delta=0.5)
