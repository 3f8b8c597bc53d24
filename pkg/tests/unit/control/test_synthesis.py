"""Unit tests for control synthesis and moment verification."""

import math

import numpy as np
import pytest

from delay_heat_control.control.synthesis import (
    moment_defects,
    moment_integral,
    residual,
    residuals,
    s1n,
    s2n,
    synthesize,
    verify_moment,
)
from delay_heat_control.core.quadrature import integrate
from delay_heat_control.exceptions import ControlBlowup, MissingTarget, SingularMode
from delay_heat_control.problem.models import ProblemData, ReducedProblem
from delay_heat_control.spectral.mode_solver import mode_solve
from delay_heat_control.spectral.modes import ModeState


def _sine_target(*weights):
    def target(x):
        x = np.asarray(x, dtype=float)
        return sum(w * np.sin((k + 1) * x) for k, w in enumerate(weights))

    return target


class TestResidual:
    """R_n(T) = Psi_n - s1_n(T) - s2_n(T) - m_n(T)."""

    def test_zero_everything(self, heat_problem):
        """Test zero data and zero target give zero residuals."""
        data = ProblemData.zero(with_target=True)
        np.testing.assert_array_equal(residuals(data, heat_problem, 4, 1.0), np.zeros(4))

    def test_orthogonality(self, heat_problem):
        """Test Psi = sin x gives R_1 = 1 and R_n = 0 otherwise."""
        data = ProblemData.zero().with_target(np.sin)
        values = residuals(data, heat_problem, 4, 1.0)
        np.testing.assert_allclose(values, [1.0, 0.0, 0.0, 0.0], atol=1e-11)

    def test_history_decay_without_delay(self, heat_problem, sine_history):
        """Test Psi = phi(., 0) gives R_1 = 1 - e^{L_1 T}."""
        data = sine_history.with_target(np.sin)
        expected = 1.0 - math.exp(-2.0)
        assert residual(data, heat_problem, 1, 2.0) == pytest.approx(expected, rel=1e-10)

    def test_batched_matches_single(self, delay_problem, sine_history):
        """Test the batched residuals agree with the per-mode form."""
        data = sine_history.with_target(_sine_target(0.5, 0.25))
        batched = residuals(data, delay_problem, 3, 1.2)
        for n in (1, 2, 3):
            assert residual(data, delay_problem, n, 1.2) == pytest.approx(batched[n - 1], abs=1e-9)

    def test_missing_target(self, heat_problem):
        """Test control without a target fails with guidance."""
        with pytest.raises(MissingTarget) as exc_info:
            residual(ProblemData.zero(), heat_problem, 1, 1.0)
        assert "data.target" in str(exc_info.value)

    def test_rejects_non_positive_horizon(self, heat_problem):
        """Test T must be positive."""
        with pytest.raises(ValueError, match="horizon"):
            residual(ProblemData.zero(with_target=True), heat_problem, 1, 0.0)


class TestFreeResponses:
    """s1_n and s2_n."""

    def test_s1n_is_free_history_response(self, delay_problem, sine_history):
        """Test s1_n equals the mode solution without forcing."""
        state = ModeState.from_problem(delay_problem, 1, history_coeff=lambda s: np.ones_like(s))
        assert s1n(sine_history, delay_problem, 1, 1.4) == pytest.approx(
            mode_solve(state, delay_problem.tau, 1.4), rel=1e-9
        )

    def test_s2n_vanishes_for_constant_equal_boundaries(self):
        """Test M_n = 0 gives s2_n = 0."""
        problem = ReducedProblem(a1sq=1.0, tau=0.5)
        data = ProblemData(
            history=lambda x, s: 1.0 + 0.0 * x * s,
            bnd_left=lambda t: 1.0 + 0.0 * t,
            bnd_right=lambda t: 1.0 + 0.0 * t,
        )
        assert s2n(data, problem, 1, 1.0) == pytest.approx(0.0, abs=1e-12)

    def test_s2n_constant_source(self):
        """Test D_n = 0, M_n = 1 and L_n = -1 give 1 - e^{-t}."""
        # L_1 = c1 - a1sq = -1 and no delay term
        problem = ReducedProblem(a1sq=2.0, c1=1.0, tau=0.5)
        # m_1(t) = (2/pi)(mu1 + mu2) with mu1 = mu2 = pi/4 gives m_1 = 1 and M_1 = c1 m_1 = 1
        data = ProblemData(
            bnd_left=lambda t: np.pi / 4 + 0.0 * t,
            bnd_right=lambda t: np.pi / 4 + 0.0 * t,
        )
        assert s2n(data, problem, 1, 1.5) == pytest.approx(1.0 - math.exp(-1.5), rel=1e-9)


class TestMomentIntegral:
    """Guarded closed-form kernel integral."""

    def test_zero_rate_limit(self):
        """Test D = 0 integrates to T."""
        assert moment_integral(0.0, 1.0, 2.5, mode=1) == 2.5

    def test_singular_horizon(self):
        """Test exp_tau(-4, 2) = 1 at tau = 1 is singular."""
        with pytest.raises(SingularMode) as exc_info:
            moment_integral(-4.0, 1.0, 2.0, mode=3)
        assert exc_info.value.mode == 3
        assert "kind=SingularMode mode=3" in exc_info.value.diagnostic()

    def test_regular_value(self):
        """Test the closed form away from singular horizons."""
        assert moment_integral(2.0, 1.0, 0.5, mode=1) == pytest.approx(0.5)


class TestSynthesize:
    """Amplitudes of the exponential ansatz."""

    def test_zero_target_zero_control(self, delay_problem):
        """Test homogeneous data and Psi = 0 give U = 0."""
        cs = synthesize(ProblemData.zero(with_target=True), delay_problem, 4, 1.0)
        assert cs.identically_zero
        assert cs(np.linspace(0, np.pi, 5), 0.5).tolist() == [0.0] * 5

    def test_no_delay_limit(self, heat_problem):
        """Test D_1 = 0 gives A_1 = 1/T and U_1(t) = e^{-L_1 (T - t)} / T."""
        horizon = 2.0
        cs = synthesize(ProblemData.zero().with_target(np.sin), heat_problem, 1, horizon)
        assert cs.amplitudes[0] == pytest.approx(1.0 / horizon, rel=1e-10)
        assert cs.coefficient(1, 0.5) == pytest.approx(math.exp(1.5) / horizon, rel=1e-10)
        steered = integrate(
            lambda s: np.exp(-(horizon - s)) * cs.coefficient(1, s), 0.0, horizon
        )
        assert steered == pytest.approx(1.0, rel=1e-10)

    def test_moment_defects_small(self, delay_problem, sine_history):
        """Test every synthesized mode solves its moment equation."""
        data = sine_history.with_target(_sine_target(0.3, -0.2, 0.1))
        cs = synthesize(data, delay_problem, 6, 1.3)
        defects = moment_defects(cs, delay_problem)
        assert len(defects) == 6
        assert max(defects) <= 1e-8

    def test_no_delay_moment_defect(self, heat_problem):
        """Test the D_n = 0 branch is exact."""
        cs = synthesize(ProblemData.zero().with_target(np.sin), heat_problem, 1, 2.0)
        assert verify_moment(cs, heat_problem, 1) <= 1e-10

    def test_zero_mode_defect_is_zero(self, heat_problem):
        """Test U_n = 0 with R_n = 0 reports no defect."""
        cs = synthesize(ProblemData.zero(with_target=True), heat_problem, 2, 1.0)
        assert verify_moment(cs, heat_problem, 2) == 0.0

    def test_linearity(self, delay_problem):
        """Test scaling the target scales every amplitude."""
        base = synthesize(
            ProblemData.zero().with_target(_sine_target(1.0, 0.5)), delay_problem, 4, 0.8
        )
        scaled = synthesize(
            ProblemData.zero().with_target(_sine_target(3.0, 1.5)), delay_problem, 4, 0.8
        )
        np.testing.assert_allclose(
            scaled.amplitudes, 3.0 * base.amplitudes, rtol=1e-12, atol=1e-14
        )

    def test_superposition(self, delay_problem, sine_history):
        """Test the control for (phi, Psi) is the sum of the (phi, 0) and (0, Psi) controls."""
        target = _sine_target(0.0, 0.7)
        both = synthesize(sine_history.with_target(target), delay_problem, 4, 1.1)
        history_only = synthesize(sine_history.with_target(_sine_target()), delay_problem, 4, 1.1)
        target_only = synthesize(ProblemData.zero().with_target(target), delay_problem, 4, 1.1)
        scale = np.max(np.abs(both.amplitudes))
        np.testing.assert_allclose(
            both.amplitudes,
            history_only.amplitudes + target_only.amplitudes,
            rtol=1e-12,
            atol=1e-12 * scale,
        )

    def test_singular_mode(self):
        """Test a mode with exp_tau(D_1, T) = 1 is reported."""
        # L_1 = 0 and D_1 = raw = -4 at tau = 1, so exp_tau(D_1, 2) = 1 - 8 + 8
        problem = ReducedProblem(a1sq=1.0, c1=1.0, c2=-4.0, tau=1.0)
        with pytest.raises(SingularMode) as exc_info:
            synthesize(ProblemData.zero().with_target(np.sin), problem, 1, 2.0)
        assert exc_info.value.mode == 1

    def test_control_blowup(self):
        """Test a short domain makes e^{-L_1 T} overflow."""
        length = 0.1
        problem = ReducedProblem(a1sq=1.0, tau=1.0, length=length)
        data = ProblemData.zero().with_target(lambda x: np.sin(np.pi * np.asarray(x) / length))
        with pytest.raises(ControlBlowup) as exc_info:
            synthesize(data, problem, 1, 1.0)
        assert exc_info.value.mode == 1
        assert exc_info.value.log_magnitude > 709.0

    def test_rejects_zero_truncation(self, heat_problem):
        """Test at least one mode is required."""
        with pytest.raises(ValueError, match="truncation"):
            synthesize(ProblemData.zero(with_target=True), heat_problem, 0, 1.0)
