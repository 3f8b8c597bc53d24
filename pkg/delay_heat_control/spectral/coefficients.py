"""
Sine coefficients of the homogenized problem.

With the affine lift L(x,t) = mu1(t) + (mu2(t) - mu1(t)) x / l, the
remainder w = u - L has zero boundary values and solves the canonical
equation with history phi - L and source f + c1 L + c2 L(t - tau) - L_t.
Projected on sin(pi n x / l):

    m_n(t)   = (2 / (pi n)) (mu1(t) - (-1)^n mu2(t))
    M_n(t)   = c1 m_n(t) + c2 m_n(t - tau) - m_n'(t)
    Phi_n(s) = <phi(., s)>_n - m_n(s)
    F_n(t)   = <f(., t)>_n + M_n(t)

where <g>_n = (2/l) int_0^l g(xi) sin(pi n xi / l) dxi.
"""

import logging
from typing import Callable, Iterable, Union

import numpy as np

try:
    from typing import Protocol, runtime_checkable
except ImportError:  # pragma: no cover
    from typing_extensions import Protocol, runtime_checkable

from delay_heat_control.config.defaults import DERIVATIVE_STEP
from delay_heat_control.core.quadrature import integrate
from delay_heat_control.problem.models import ProblemData, ReducedProblem, evaluate_on

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@runtime_checkable
class SineSeriesSource(Protocol):
    """A space-time function that knows its own sine coefficients."""

    def sine_coefficients(self, t: ArrayLike, modes: np.ndarray) -> np.ndarray:
        ...


def is_zero_function(func: Callable) -> bool:
    """True for functions flagged as identically zero."""
    return bool(getattr(func, "identically_zero", False))


def _modes_array(modes: Union[int, Iterable[int]]) -> np.ndarray:
    modes = np.atleast_1d(np.asarray(modes, dtype=int))
    if modes.size == 0 or modes.min() < 1:
        raise ValueError(f"Invalid mode indices: {modes}\nMode indices start at 1")
    return modes


def _project(values_at: Callable[[np.ndarray], np.ndarray], length: float, modes: np.ndarray):
    """(2/l) int_0^l v(xi) sin(pi n xi / l) dxi for v(xi) of shape (..., q)."""
    wavenumbers = np.pi * modes.astype(float) / length

    def integrand(xi: np.ndarray) -> np.ndarray:
        values = np.asarray(values_at(xi), dtype=float)
        basis = np.sin(np.multiply.outer(wavenumbers, xi))
        basis = basis.reshape((modes.size,) + (1,) * (values.ndim - 1) + (xi.size,))
        return values[None, ...] * basis

    pieces = max(1, int(modes.max()) // 4)
    return (2.0 / length) * integrate(integrand, 0.0, length, initial_pieces=pieces)


def sine_coefficients(
    g: Callable[[ArrayLike], ArrayLike], length: float, modes: Union[int, Iterable[int]]
) -> np.ndarray:
    """
    Sine coefficients of g on [0, l] for every mode in ``modes``.

    Example:
        >>> c = sine_coefficients(lambda x: np.sin(x), np.pi, [1, 2])
        >>> np.round(c, 12).tolist()
        [1.0, 0.0]
    """
    modes = _modes_array(modes)
    return np.asarray(_project(lambda xi: evaluate_on(g, xi), length, modes))


def sine_coeff(g: Callable[[ArrayLike], ArrayLike], length: float, n: int) -> float:
    """(2/l) int_0^l g(xi) sin(pi n xi / l) dxi to absolute tolerance 1e-11."""
    return float(sine_coefficients(g, length, [n])[0])


def lift_coeff(mu1_val: ArrayLike, mu2_val: ArrayLike, n: ArrayLike) -> ArrayLike:
    """
    Exact sine coefficient of the affine lift with end values mu1, mu2.

    Example:
        >>> lift_coeff(0.0, 1.0, 1) == 2 / np.pi
        True
    """
    n_arr = np.asarray(n)
    sign = np.where(n_arr % 2 == 0, 1.0, -1.0)
    value = (2.0 / (np.pi * n_arr)) * (np.asarray(mu1_val) - sign * np.asarray(mu2_val))
    return float(value) if np.ndim(value) == 0 else value


class ModalCoefficients:
    """
    Batched coefficient functions for a set of modes.

    Every method takes a scalar or a 1-D array of times and returns an
    array of shape (len(modes),) or (len(modes), len(times)). The three
    ``include_*`` switches select the data the coefficients are built
    from, which gives the split of the solution into the part driven by
    the initial history, the part driven by the boundary traces and the
    part driven by the inhomogeneity.

    Example:
        >>> coeffs = ModalCoefficients(data, problem, modes=range(1, 17))
        >>> coeffs.history(np.array([-0.5, 0.0])).shape
        (16, 2)
    """

    def __init__(
        self,
        data: ProblemData,
        problem: ReducedProblem,
        modes: Union[int, Iterable[int]],
        include_initial: bool = True,
        include_boundary: bool = True,
        include_forcing: bool = True,
    ):
        self.data = data
        self.problem = problem
        self.modes = _modes_array(list(modes) if not np.isscalar(modes) else modes)
        self.include_initial = include_initial
        self.include_boundary = include_boundary and not (
            is_zero_function(data.bnd_left) and is_zero_function(data.bnd_right)
        )
        self.include_forcing = include_forcing and not is_zero_function(data.forcing)
        self.project_initial = include_initial and not is_zero_function(data.history)

    def _zeros(self, t: np.ndarray) -> np.ndarray:
        return np.zeros((self.modes.size,) + t.shape)

    def _project_space_time(self, func, t: np.ndarray) -> np.ndarray:
        flat = t.reshape(-1)

        def values_at(xi: np.ndarray) -> np.ndarray:
            return evaluate_on(func, xi[None, :], flat[:, None])

        projected = _project(values_at, self.problem.length, self.modes)
        return projected.reshape((self.modes.size,) + t.shape)

    def lift(self, t: ArrayLike) -> np.ndarray:
        """m_n(t)."""
        t = np.asarray(t, dtype=float)
        mu1 = evaluate_on(self.data.bnd_left, t)
        mu2 = evaluate_on(self.data.bnd_right, t)
        n = self.modes.reshape((-1,) + (1,) * t.ndim)
        return np.asarray(lift_coeff(mu1[None, ...], mu2[None, ...], n))

    def lift_rate(self, t: ArrayLike) -> np.ndarray:
        """m_n'(t) by central differences with step 1e-6 max(1, |t|)."""
        t = np.asarray(t, dtype=float)
        h = DERIVATIVE_STEP * np.maximum(1.0, np.abs(t))
        return (self.lift(t + h) - self.lift(t - h)) / (2.0 * h)

    def source(self, t: ArrayLike) -> np.ndarray:
        """M_n(t) = c1 m_n(t) + c2 m_n(t - tau) - m_n'(t)."""
        t = np.asarray(t, dtype=float)
        if not self.include_boundary:
            return self._zeros(t)
        p = self.problem
        value = p.c1 * self.lift(t) - self.lift_rate(t)
        if p.c2 != 0.0:
            value = value + p.c2 * self.lift(t - p.tau)
        return value

    def projected_history(self, s: ArrayLike) -> np.ndarray:
        """<phi(., s)>_n without the lift correction."""
        s = np.asarray(s, dtype=float)
        if not self.project_initial:
            return self._zeros(s)
        return self._project_space_time(self.data.history, s)

    def projected_forcing(self, t: ArrayLike) -> np.ndarray:
        """<f(., t)>_n; exact for forcings that carry their own sine series."""
        t = np.asarray(t, dtype=float)
        if not self.include_forcing:
            return self._zeros(t)
        forcing = self.data.forcing
        if isinstance(forcing, SineSeriesSource):
            return np.asarray(forcing.sine_coefficients(t, self.modes), dtype=float)
        return self._project_space_time(forcing, t)

    def history(self, s: ArrayLike) -> np.ndarray:
        """Phi_n(s) = <phi(., s)>_n - m_n(s)."""
        s = np.asarray(s, dtype=float)
        value = self.projected_history(s)
        if self.include_boundary:
            value = value - self.lift(s)
        return value

    def forcing(self, t: ArrayLike) -> np.ndarray:
        """F_n(t) = <f(., t)>_n + M_n(t)."""
        t = np.asarray(t, dtype=float)
        return self.projected_forcing(t) + self.source(t)

    def has_history(self) -> bool:
        return self.project_initial or self.include_boundary

    def has_forcing(self) -> bool:
        return self.include_forcing or self.include_boundary

    def row(self, n: int) -> "ModalCoefficients":
        """Coefficients of a single mode with the same data selection."""
        return ModalCoefficients(
            self.data,
            self.problem,
            [n],
            include_initial=self.include_initial,
            include_boundary=self.include_boundary,
            include_forcing=self.include_forcing,
        )


def _single(coeffs: ModalCoefficients, values: np.ndarray) -> ArrayLike:
    row = values[0]
    return float(row) if np.ndim(row) == 0 else row


def source_coeff(data: ProblemData, p: ReducedProblem, n: int, t: ArrayLike) -> ArrayLike:
    """M_n(t), the homogenization source of mode n."""
    coeffs = ModalCoefficients(data, p, [n])
    return _single(coeffs, coeffs.source(t))


def history_coeff(data: ProblemData, p: ReducedProblem, n: int, s: ArrayLike) -> ArrayLike:
    """Phi_n(s), the history coefficient of the homogenized state."""
    coeffs = ModalCoefficients(data, p, [n])
    return _single(coeffs, coeffs.history(s))


def forcing_coeff(data: ProblemData, p: ReducedProblem, n: int, t: ArrayLike) -> ArrayLike:
    """F_n(t), the forcing coefficient of the homogenized state."""
    coeffs = ModalCoefficients(data, p, [n])
    return _single(coeffs, coeffs.forcing(t))


__all__ = [
    "ModalCoefficients",
    "SineSeriesSource",
    "forcing_coeff",
    "history_coeff",
    "is_zero_function",
    "lift_coeff",
    "sine_coeff",
    "sine_coefficients",
    "source_coeff",
]
