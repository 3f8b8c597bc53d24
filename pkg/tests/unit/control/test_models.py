"""Unit tests for the control series and steering report."""

import math

import numpy as np
import pytest

from delay_heat_control.control.models import ControlSeries, SteeringReport
from delay_heat_control.control.steering import verify_steering
from delay_heat_control.control.synthesis import synthesize
from delay_heat_control.exceptions import MissingTarget
from delay_heat_control.problem.models import ProblemData, ReducedProblem
from delay_heat_control.spectral.coefficients import SineSeriesSource


@pytest.fixture
def two_mode_control() -> ControlSeries:
    """Hand-built control with L = (-1, -4) and amplitudes (2, 0)."""
    return ControlSeries(
        problem=ReducedProblem(a1sq=1.0),
        truncation=2,
        horizon=1.0,
        amplitudes=[2.0, 0.0],
        mode_big_l=[-1.0, -4.0],
        mode_big_d=[0.0, 0.0],
        residuals=[2.0, 0.0],
    )


class TestControlSeries:
    """Evaluation of U(x, t)."""

    def test_coefficient_at_horizon_is_amplitude(self, two_mode_control):
        """Test U_n(T) = A_n."""
        assert two_mode_control.coefficient(1, 1.0) == pytest.approx(2.0, rel=1e-15)
        assert two_mode_control.coefficient(2, 1.0) == 0.0

    def test_coefficient_growth_backwards(self, two_mode_control):
        """Test U_n(t) = e^{-L_n (T - t)} A_n."""
        assert two_mode_control.coefficient(1, 0.0) == pytest.approx(2.0 * math.e, rel=1e-14)

    def test_coefficients_shape(self, two_mode_control):
        """Test batched coefficients are (N,) + t.shape."""
        assert two_mode_control.coefficients(0.5).shape == (2,)
        assert two_mode_control.coefficients(np.array([0.0, 0.5, 1.0])).shape == (2, 3)

    def test_call_sums_the_series(self, two_mode_control):
        """Test U(x, t) = sum U_n(t) sin(n x)."""
        value = two_mode_control(np.pi / 2, 1.0)
        assert value == pytest.approx(2.0, rel=1e-15)
        grid = two_mode_control(np.linspace(0, np.pi, 3)[None, :], np.array([[0.0], [1.0]]))
        assert grid.shape == (2, 3)

    def test_is_sine_series_source(self, two_mode_control):
        """Test solvers can project the control exactly, with zeros beyond N."""
        assert isinstance(two_mode_control, SineSeriesSource)
        coefficients = two_mode_control.sine_coefficients(np.array([1.0]), np.array([1, 2, 3]))
        np.testing.assert_allclose(coefficients, [[2.0], [0.0], [0.0]], rtol=1e-15)

    def test_log_magnitude_at_start(self, two_mode_control):
        """Test log|U_n(0)| = -L_n T + log|A_n|."""
        logs = two_mode_control.log_magnitude_at_start()
        assert logs[0] == pytest.approx(1.0 + math.log(2.0))
        assert logs[1] == -math.inf

    def test_arrays_are_read_only(self, two_mode_control):
        """Test the synthesized control cannot be modified."""
        with pytest.raises(ValueError):
            two_mode_control.amplitudes[0] = 1.0

    def test_rejects_wrong_lengths(self):
        """Test every array needs N entries."""
        with pytest.raises(ValueError, match="amplitudes"):
            ControlSeries(
                problem=ReducedProblem(a1sq=1.0),
                truncation=2,
                horizon=1.0,
                amplitudes=[1.0],
                mode_big_l=[-1.0, -4.0],
                mode_big_d=[0.0, 0.0],
                residuals=[1.0, 0.0],
            )

    def test_rejects_mode_out_of_range(self, two_mode_control):
        """Test coefficient() checks the mode number."""
        with pytest.raises(ValueError, match="modes 1..2"):
            two_mode_control.coefficient(3, 0.5)


class TestSteeringReport:
    """Text rendering of the steering report."""

    def test_without_oracle(self):
        """Test the oracle line says it was not computed."""
        report = SteeringReport(series_error=1e-9, moment_defects=[1e-12, 0.0])
        text = str(report)
        assert "series terminal error: 1.000000e-09" in text
        assert "oracle terminal error: not computed" in text
        assert "moment defect n=2" in text
        assert report.max_moment_defect == 1e-12

    def test_with_oracle(self):
        """Test the oracle error is listed when present."""
        report = SteeringReport(series_error=0.0, oracle_error=2.5e-3)
        assert "oracle terminal error: 2.500000e-03" in str(report)
        assert report.max_moment_defect == 0.0


class TestVerifySteering:
    """Series-based steering check."""

    def test_zero_target(self, delay_problem):
        """Test Psi = 0 with zero data gives zero error."""
        data = ProblemData.zero(with_target=True)
        cs = synthesize(data, delay_problem, 3, 1.0)
        report = verify_steering(cs, data, delay_problem)
        assert report.series_error == 0.0
        assert report.oracle_error is None

    def test_single_mode_without_delay(self, heat_problem):
        """Test the heat equation is steered to sin x."""
        data = ProblemData.zero().with_target(np.sin)
        cs = synthesize(data, heat_problem, 1, 1.0)
        report = verify_steering(cs, data, heat_problem)
        assert report.series_error <= 1e-8
        assert report.max_moment_defect <= 1e-10

    def test_missing_target(self, heat_problem, two_mode_control):
        """Test steering needs a target."""
        with pytest.raises(MissingTarget):
            verify_steering(two_mode_control, ProblemData.zero(), heat_problem)
