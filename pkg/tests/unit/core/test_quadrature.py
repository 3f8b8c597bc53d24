"""Unit tests for adaptive Gauss-Kronrod quadrature."""

import numpy as np
import pytest

from delay_heat_control.core.quadrature import integrate
from delay_heat_control.exceptions import NumericOverflow, QuadratureNonConvergence


class TestIntegrate:
    """Scalar and vector integrands."""

    def test_polynomial(self):
        """Test a low-degree polynomial is integrated exactly."""
        assert integrate(lambda x: x**2, 0.0, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-14)

    def test_scalar_integrand_returns_float(self):
        """Test scalar integrands give a plain float."""
        assert isinstance(integrate(np.cos, 0.0, 1.0), float)

    def test_vector_integrand(self):
        """Test all components are integrated on a shared subdivision."""
        result = integrate(lambda x: np.stack([np.sin(x), np.cos(x)]), 0.0, np.pi)
        assert result.shape == (2,)
        np.testing.assert_allclose(result, [2.0, 0.0], atol=1e-10)

    def test_kink_with_breakpoint(self):
        """Test a kink at a declared breakpoint converges to the exact value."""
        result = integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0, breakpoints=[0.3])
        assert result == pytest.approx(0.29, rel=1e-12)

    def test_reversed_limits_negate(self):
        """Test b < a integrates backwards."""
        forward = integrate(np.exp, 0.0, 1.0)
        assert integrate(np.exp, 1.0, 0.0) == pytest.approx(-forward, rel=1e-15)

    def test_empty_range_gives_zero_of_value_shape(self):
        """Test a degenerate range returns zeros of the integrand's shape."""
        assert integrate(np.sin, 0.5, 0.5) == 0.0
        result = integrate(lambda x: np.stack([x, x, x]), 1.0, 1.0)
        np.testing.assert_array_equal(result, np.zeros(3))

    def test_breakpoints_outside_range_are_ignored(self):
        """Test breakpoints beyond [a, b] do not change the result."""
        result = integrate(np.exp, 0.0, 1.0, breakpoints=[-3.0, 0.0, 1.0, 7.0])
        assert result == pytest.approx(np.e - 1.0, rel=1e-13)

    def test_oscillatory_integrand_with_initial_pieces(self):
        """Test a fast oscillation resolved by starting from several pieces."""
        result = integrate(lambda x: np.sin(40.0 * x) ** 2, 0.0, np.pi, initial_pieces=8)
        assert result == pytest.approx(np.pi / 2.0, rel=1e-10)


class TestIntegrateFailures:
    """Failures surface as numerical errors."""

    def test_non_finite_integrand(self):
        """Test NaN values raise NumericOverflow."""
        with pytest.raises(NumericOverflow) as exc_info:
            integrate(lambda x: np.full_like(x, np.nan), 0.0, 1.0)
        assert exc_info.value.quantity == "integrand"

    def test_undeclared_jump_exhausts_depth(self):
        """Test a step off the dyadic grid cannot converge within a small depth."""
        with pytest.raises(QuadratureNonConvergence) as exc_info:
            integrate(lambda x: np.where(x < 1.0 / 3.0, 0.0, 1.0), 0.0, 1.0, max_depth=3)
        error = exc_info.value
        assert error.lower <= 1.0 / 3.0 <= error.upper
        assert "kind=QuadratureNonConvergence" in error.diagnostic()
