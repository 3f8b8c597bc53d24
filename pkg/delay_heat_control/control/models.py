"""Synthesized control and steering verification results."""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np

from delay_heat_control.problem.models import ReducedProblem

ArrayLike = Union[float, np.ndarray]


def _frozen_array(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class ControlSeries:
    """
    Distributed control U(x, t) = sum_n U_n(t) sin(pi n x / l).

    U_n(t) = e^{-L_n (T - t)} A_n, so U_n(T) = A_n. The series knows its
    own sine coefficients, so solvers project it exactly.

    Attributes:
        problem: Canonical problem the control was synthesized for
        truncation: Number of modes N
        horizon: Steering time T
        amplitudes: A_n(T), shape (N,)
        mode_big_l: L_n, shape (N,)
        mode_big_d: D_n, shape (N,)
        residuals: R_n(T), shape (N,)

    Example:
        >>> cs = synthesize(data, problem, truncation=4, horizon=1.0)
        >>> cs.coefficient(1, 1.0) == cs.amplitudes[0]
        True
    """

    problem: ReducedProblem
    truncation: int
    horizon: float
    amplitudes: np.ndarray
    mode_big_l: np.ndarray
    mode_big_d: np.ndarray
    residuals: np.ndarray

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError(
                f"Invalid truncation: {self.truncation}\nAt least one mode is required"
            )
        if not self.horizon > 0:
            raise ValueError(
                f"Invalid horizon: {self.horizon}\nThe steering time T must be positive"
            )
        for name in ("amplitudes", "mode_big_l", "mode_big_d", "residuals"):
            values = _frozen_array(getattr(self, name))
            if values.shape != (self.truncation,):
                raise ValueError(
                    f"Invalid {name}: shape {values.shape}, expected ({self.truncation},)"
                )
            object.__setattr__(self, name, values)

    @property
    def modes(self) -> np.ndarray:
        return np.arange(1, self.truncation + 1)

    @property
    def identically_zero(self) -> bool:
        return not np.any(self.amplitudes)

    def _scaled(self, big_l: np.ndarray, amplitude: np.ndarray, t: np.ndarray) -> np.ndarray:
        # sign(A) e^{-L (T - t) + log|A|} keeps A = 0 modes at zero
        with np.errstate(divide="ignore", over="ignore"):
            exponent = -big_l * (self.horizon - t) + np.log(np.abs(amplitude))
            return np.where(amplitude == 0.0, 0.0, np.sign(amplitude) * np.exp(exponent))

    def coefficients(self, t: ArrayLike) -> np.ndarray:
        """U_n(t) for all modes, shape (N,) or (N,) + t.shape."""
        t = np.asarray(t, dtype=float)
        shape = (self.truncation,) + (1,) * t.ndim
        return self._scaled(
            self.mode_big_l.reshape(shape), self.amplitudes.reshape(shape), t[None, ...]
        )

    def coefficient(self, n: int, t: ArrayLike) -> ArrayLike:
        if not 1 <= n <= self.truncation:
            raise ValueError(f"Invalid mode: {n}\nThe control has modes 1..{self.truncation}")
        value = self._scaled(self.mode_big_l[n - 1], self.amplitudes[n - 1], np.asarray(t, float))
        return float(value) if np.ndim(value) == 0 else value

    def sine_coefficients(self, t: ArrayLike, modes: np.ndarray) -> np.ndarray:
        """Exact sine coefficients for the requested modes (zero beyond N)."""
        t = np.asarray(t, dtype=float)
        modes = np.asarray(modes, dtype=int)
        all_modes = self.coefficients(t)
        inside = (modes >= 1) & (modes <= self.truncation)
        result = np.zeros((modes.size,) + t.shape)
        result[inside] = all_modes[modes[inside] - 1]
        return result

    def __call__(self, x: ArrayLike, t: ArrayLike) -> ArrayLike:
        x = np.asarray(x, dtype=float)
        t = np.asarray(t, dtype=float)
        bx, bt = np.broadcast_arrays(x, t)
        times, inverse = np.unique(bt.ravel(), return_inverse=True)
        coeffs = self.coefficients(times)[:, inverse]
        sines = np.sin(np.multiply.outer(self.problem.wavenumber(self.modes), bx.ravel()))
        value = np.sum(coeffs * sines, axis=0).reshape(bx.shape)
        return float(value) if value.ndim == 0 else value

    def log_magnitude_at_start(self) -> np.ndarray:
        """log|U_n(0)| = -L_n T + log|A_n| (-inf for A_n = 0)."""
        with np.errstate(divide="ignore"):
            return -self.mode_big_l * self.horizon + np.log(np.abs(self.amplitudes))


@dataclass
class SteeringReport:
    """
    Terminal mismatch max_x |u(x, T) - Psi(x)| of the controlled state.

    Attributes:
        series_error: Mismatch of the series solution
        oracle_error: Mismatch of the finite-difference oracle (None if not run)
        moment_defects: Relative defect of each mode's moment equation
    """

    series_error: float
    oracle_error: Optional[float] = None
    moment_defects: List[float] = field(default_factory=list)

    @property
    def max_moment_defect(self) -> float:
        return max(self.moment_defects) if self.moment_defects else 0.0

    def __str__(self) -> str:
        lines = [f"series terminal error: {self.series_error:.6e}"]
        if self.oracle_error is not None:
            lines.append(f"oracle terminal error: {self.oracle_error:.6e}")
        else:
            lines.append("oracle terminal error: not computed")
        for n, defect in enumerate(self.moment_defects, start=1):
            marker = "nan" if math.isnan(defect) else f"{defect:.6e}"
            lines.append(f"moment defect n={n}: {marker}")
        return "\n".join(lines)


__all__ = ["ControlSeries", "SteeringReport"]
