"""
Truncated sine-series solution of the canonical problem.

    u(x, t) = sum_{n=1..N} y_n(t) sin(pi n x / l) + mu1(t) + (mu2(t) - mu1(t)) x / l

where y_n are the mode responses of the homogenized state. All modes
are advanced together: the spatial projections of the data for every
mode and every quadrature time are computed in one batched call.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from delay_heat_control.config.defaults import DEFAULT_MODES
from delay_heat_control.problem.models import ProblemData, ReducedProblem, evaluate_on
from delay_heat_control.solution.models import Field, SolutionComponents
from delay_heat_control.spectral.coefficients import ModalCoefficients
from delay_heat_control.spectral.mode_solver import build_modes, modal_response
from delay_heat_control.spectral.modes import ModeState, mode_constant_arrays

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

_PARTS = {
    "full": (True, True, True),
    "initial": (True, False, False),
    "boundary": (False, True, False),
    "forcing": (False, False, True),
}


@dataclass(frozen=True)
class SeriesSolution:
    """
    Truncated series solution u_N of the canonical problem.

    Attributes:
        problem: Canonical coefficients
        data: History, boundary traces, forcing
        truncation: Number of modes N
        horizon: Final time T
        modes: ModeState for n = 1..N

    Example:
        >>> sol = SeriesSolution.build(problem, data, truncation=8, horizon=1.0)
        >>> sol.evaluate(np.pi / 2, 0.5)
    """

    problem: ReducedProblem
    data: ProblemData
    truncation: int
    horizon: float
    modes: List[ModeState]
    _coefficients: Dict[str, ModalCoefficients] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )
    _cache: Dict[Tuple[str, float], np.ndarray] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError(
                f"Invalid truncation: {self.truncation}\nThe series needs at least one mode"
            )
        if not self.horizon > 0:
            raise ValueError(f"Invalid horizon: {self.horizon}\nThe final time T must be positive")
        if len(self.modes) != self.truncation:
            raise ValueError(
                f"Invalid modes: {len(self.modes)} states for truncation {self.truncation}"
            )

    @classmethod
    def build(
        cls,
        problem: ReducedProblem,
        data: ProblemData,
        truncation: int = DEFAULT_MODES,
        *,
        horizon: float,
    ) -> "SeriesSolution":
        logger.info(f"series solution: N={truncation}, T={horizon}, tau={problem.tau}")
        return cls(
            problem=problem,
            data=data,
            truncation=truncation,
            horizon=float(horizon),
            modes=build_modes(problem, data, truncation),
        )

    @property
    def indices(self) -> np.ndarray:
        return np.arange(1, self.truncation + 1)

    def coefficients(self, part: str = "full") -> ModalCoefficients:
        """Batched coefficient functions of one part of the operator split."""
        if part not in self._coefficients:
            initial, boundary, forcing = _PARTS[part]
            self._coefficients[part] = ModalCoefficients(
                self.data,
                self.problem,
                self.indices,
                include_initial=initial,
                include_boundary=boundary,
                include_forcing=forcing,
            )
        return self._coefficients[part]

    def _amplitudes_at(self, t: float, part: str) -> np.ndarray:
        key = (part, float(t))
        if key not in self._cache:
            coeffs = self.coefficients(part)
            constants = mode_constant_arrays(self.problem, self.indices)
            self._cache[key] = modal_response(
                constants.big_l,
                constants.raw_delay,
                self.problem.tau,
                coeffs.history if coeffs.has_history() else None,
                coeffs.forcing if coeffs.has_forcing() else None,
                float(t),
                modes=self.indices,
            )
        return self._cache[key]

    def amplitudes(self, t: ArrayLike, part: str = "full") -> np.ndarray:
        """
        Mode values y_n(t), shape (N,) for scalar t or (N, len(t)).

        Raises:
            NumericOverflow: With the offending mode
        """
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr < 0):
            raise ValueError("Invalid time: the series solution is defined for t >= 0")
        if t_arr.ndim == 0:
            return self._amplitudes_at(float(t_arr), part)
        columns = [self._amplitudes_at(float(s), part) for s in t_arr.ravel()]
        return np.stack(columns, axis=-1).reshape((self.truncation,) + t_arr.shape)

    def _modal_sum(
        self, x: ArrayLike, t: ArrayLike, part: str
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        bx, bt = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(t, dtype=float))
        times, inverse = np.unique(bt.ravel(), return_inverse=True)
        amps = self.amplitudes(times, part)[:, inverse]
        sines = np.sin(np.multiply.outer(self.problem.wavenumber(self.indices), bx.ravel()))
        return np.sum(amps * sines, axis=0).reshape(bx.shape), bx, bt

    def evaluate(self, x: ArrayLike, t: ArrayLike) -> ArrayLike:
        """u_N(x, t); x and t broadcast against each other."""
        modal, bx, bt = self._modal_sum(x, t, "full")
        value = modal + self.data.lift(bx, bt, self.problem.length)
        return float(value) if np.ndim(value) == 0 else value

    def evaluate_components(self, x: ArrayLike, t: ArrayLike) -> SolutionComponents:
        """Initial, boundary and forcing parts of u_N(x, t); they sum to evaluate(x, t)."""
        parts = {}
        for part in ("initial", "boundary", "forcing"):
            modal, bx, bt = self._modal_sum(x, t, part)
            if part == "boundary":
                modal = modal + self.data.lift(bx, bt, self.problem.length)
            parts[part] = float(modal) if np.ndim(modal) == 0 else modal
        return SolutionComponents(**parts)

    def sample(self, nx: int, nt: int) -> Field:
        """
        u_N on a uniform nx-by-nt grid of [0, l] x [0, T].

        The boundary columns are set to mu1(t), mu2(t) exactly.
        """
        if nx < 2 or nt < 2:
            raise ValueError(f"Invalid sample grid: {nx}x{nt}\nBoth sizes must be at least 2")
        xs = np.linspace(0.0, self.problem.length, nx)
        ts = np.linspace(0.0, self.horizon, nt)
        logger.info(f"sampling series solution on {nx}x{nt} grid")
        values = np.array(self.evaluate(xs[None, :], ts[:, None]))
        values[:, 0] = evaluate_on(self.data.bnd_left, ts)
        values[:, -1] = evaluate_on(self.data.bnd_right, ts)
        return Field(xs=xs, ts=ts, values=values)

    def tail_estimate(self) -> float:
        """|y_N(T)|, the size of the last retained mode at the horizon."""
        return float(abs(self.amplitudes(self.horizon)[-1]))

    def terminal_profile(self, xs: np.ndarray) -> np.ndarray:
        return np.asarray(self.evaluate(np.asarray(xs, dtype=float), self.horizon))


def evaluate(sol: SeriesSolution, x: ArrayLike, t: ArrayLike) -> ArrayLike:
    return sol.evaluate(x, t)


def evaluate_components(sol: SeriesSolution, x: ArrayLike, t: ArrayLike) -> SolutionComponents:
    return sol.evaluate_components(x, t)


def sample(sol: SeriesSolution, nx: int, nt: int) -> Field:
    return sol.sample(nx, nt)


def tail_estimate(sol: SeriesSolution) -> float:
    return sol.tail_estimate()


def solve_series(
    problem: ReducedProblem,
    data: ProblemData,
    horizon: float,
    truncation: int = DEFAULT_MODES,
    source: Optional[object] = None,
) -> SeriesSolution:
    """Build the series solution, optionally with f replaced by ``source``."""
    if source is not None:
        data = data.with_forcing(source)
    return SeriesSolution.build(problem, data, truncation, horizon=horizon)


__all__ = [
    "SeriesSolution",
    "evaluate",
    "evaluate_components",
    "sample",
    "solve_series",
    "tail_estimate",
]
