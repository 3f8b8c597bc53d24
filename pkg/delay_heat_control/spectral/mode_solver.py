"""
Per-mode delay ODE solvers.

Each mode of the sine decomposition solves

    y'(t) = L y(t) + raw y(t - tau) + F(t),   y = Phi on [-tau, 0].

``modal_response`` evaluates the representation through the fundamental
solution X (see ``core.delayed_exp.fundamental_solution``):

    y(t) = X(t) Phi(0) + raw int_{-tau}^{min(0, t-tau)} X(t - tau - s) Phi(s) ds
           + int_0^t X(t - s) F(s) ds

which is the delayed-exponential formula with the factor e^{-L tau}
absorbed into X. ``mode_solve_steps`` integrates the same equation with
RK4 by the method of steps and serves as an independent cross-check.
"""

import logging
import math
from typing import Callable, List, Optional, Sequence

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from delay_heat_control.core.delayed_exp import fundamental_solution, knots
from delay_heat_control.core.quadrature import integrate
from delay_heat_control.exceptions import NumericOverflow
from delay_heat_control.problem.models import ProblemData, ReducedProblem, evaluate_on
from delay_heat_control.spectral.coefficients import ModalCoefficients
from delay_heat_control.spectral.modes import ModeState

logger = logging.getLogger(__name__)

# Maps abscissae (k,) to coefficient values (N, k).
BatchedCoefficient = Callable[[np.ndarray], np.ndarray]

_RK4_STABLE_STEP = 2.0


def _history_breakpoints(delay: float, t: float) -> List[float]:
    return [t - (j + 1) * delay for j in range(int(math.floor(t / delay)) + 1)]


def _forcing_breakpoints(delay: float, t: float) -> List[float]:
    shifted = [t - j * delay for j in range(1, int(math.floor(t / delay)) + 1)]
    return shifted + knots(delay, t)


def modal_response(
    big_l: np.ndarray,
    raw_delay: np.ndarray,
    delay: float,
    history: Optional[BatchedCoefficient],
    forcing: Optional[BatchedCoefficient],
    t: float,
    modes: Optional[Sequence[int]] = None,
) -> np.ndarray:
    """
    Values y_n(t) of all modes at one time.

    Args:
        big_l: L_n, shape (N,)
        raw_delay: c2 - (pi n a2 / l)^2, shape (N,)
        delay: tau
        history: Phi_n on [-tau, 0] as a batched coefficient, or None for zero
        forcing: F_n on [0, t] as a batched coefficient, or None for zero
        t: Evaluation time, t >= 0
        modes: Mode numbers, only used to report failures

    Returns:
        Array of shape (N,)

    Raises:
        NumericOverflow: If the result is not finite
        QuadratureNonConvergence: If an integral cannot be resolved
    """
    big_l = np.asarray(big_l, dtype=float)
    raw_delay = np.asarray(raw_delay, dtype=float)
    if t < 0:
        raise ValueError(f"Invalid time: {t}\nModal responses are defined for t >= 0")
    column_l = big_l[:, None]
    column_raw = raw_delay[:, None]
    result = np.zeros(big_l.shape)

    if history is not None:
        start = np.asarray(history(np.array([0.0])), dtype=float)[:, 0]
        result = result + np.asarray(fundamental_solution(big_l, raw_delay, delay, t)) * start

        if np.any(raw_delay != 0.0):

            def delayed_history(s: np.ndarray) -> np.ndarray:
                kernel = fundamental_solution(column_l, column_raw, delay, t - delay - s[None, :])
                return column_raw * kernel * history(s)

            upper = min(0.0, t - delay)
            result = result + integrate(
                delayed_history, -delay, upper, breakpoints=_history_breakpoints(delay, t)
            )

    if forcing is not None and t > 0:

        def driven(s: np.ndarray) -> np.ndarray:
            kernel = fundamental_solution(column_l, column_raw, delay, t - s[None, :])
            return kernel * forcing(s)

        result = result + integrate(
            driven, 0.0, t, breakpoints=_forcing_breakpoints(delay, t)
        )

    result = np.atleast_1d(np.asarray(result, dtype=float))
    if not np.all(np.isfinite(result)):
        bad = int(np.nonzero(~np.isfinite(result))[0][0])
        mode = int(modes[bad]) if modes is not None else bad + 1
        raise NumericOverflow("mode solution", mode=mode)
    return result


def _single_mode(func: Callable) -> BatchedCoefficient:
    def batched(s: np.ndarray) -> np.ndarray:
        return evaluate_on(func, s)[None, :]

    return batched


def mode_solve(ms: ModeState, tau: float, t: float) -> float:
    """
    y_n(t) of one mode by the delayed-exponential representation.

    Example:
        >>> ms = ModeState(index=1, big_l=-1.0, big_d=0.0, raw_delay=0.0,
        ...                history_coeff=lambda s: np.ones_like(s))
        >>> round(mode_solve(ms, 1.0, 1.0), 12) == round(math.exp(-1.0), 12)
        True
    """
    value = modal_response(
        np.array([ms.big_l]),
        np.array([ms.raw_delay]),
        tau,
        _single_mode(ms.history_coeff),
        _single_mode(ms.forcing_coeff),
        t,
        modes=[ms.index],
    )
    return float(value[0])


def mode_solve_steps(ms: ModeState, tau: float, t: float, dt: float) -> float:
    """
    y_n(t) of one mode by classical RK4 and the method of steps.

    The step is snapped so that tau is a whole number of steps and is
    refined until |L| dt <= 2. Delayed values inside the history come
    from Phi directly; later ones from the cubic Hermite interpolant of
    the stored solution.
    """
    if dt <= 0:
        raise ValueError(f"Invalid step: {dt}\nThe time step must be strictly positive")
    if t <= 0:
        return float(evaluate_on(ms.history_coeff, t))

    steps = max(1, math.ceil(tau / dt - 1e-9))
    if ms.big_l != 0.0 and abs(ms.big_l) * tau / steps > _RK4_STABLE_STEP:
        refined = math.ceil(abs(ms.big_l) * tau / _RK4_STABLE_STEP)
        logger.warning(
            f"mode {ms.index}: step {tau / steps:.3g} refined to {tau / refined:.3g} "
            f"for stability (L={ms.big_l:.4g})"
        )
        steps = refined
    h = tau / steps
    total = max(1, math.ceil(t / h - 1e-9))

    forcing = evaluate_on(ms.forcing_coeff, 0.5 * h * np.arange(2 * total + 1))
    history = evaluate_on(ms.history_coeff, -tau + 0.5 * h * np.arange(2 * steps + 1))
    big_l, raw = ms.big_l, ms.raw_delay

    y = np.empty(total + 1)
    slope = np.empty(total + 1)
    y[0] = history[-1]

    def delayed(i: int, half: int) -> float:
        j = i - steps
        if j < 0:
            return history[2 * i + half]
        if half == 0:
            return y[j]
        if half == 2:
            return y[j + 1]
        return 0.5 * (y[j] + y[j + 1]) + h * (slope[j] - slope[j + 1]) / 8.0

    for i in range(total):
        k1 = big_l * y[i] + raw * delayed(i, 0) + forcing[2 * i]
        slope[i] = k1
        middle = raw * delayed(i, 1) + forcing[2 * i + 1]
        k2 = big_l * (y[i] + 0.5 * h * k1) + middle
        k3 = big_l * (y[i] + 0.5 * h * k2) + middle
        k4 = big_l * (y[i] + h * k3) + raw * delayed(i, 2) + forcing[2 * i + 2]
        y[i + 1] = y[i] + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
    slope[total] = big_l * y[total] + raw * delayed(total, 0) + forcing[2 * total]

    if abs(t - total * h) <= 1e-12 * max(1.0, t):
        return float(y[total])
    grid = h * np.arange(total - 1, total + 1)
    spline = CubicHermiteSpline(grid, y[total - 1:], slope[total - 1:])
    return float(spline(t))


def build_modes(
    problem: ReducedProblem,
    data: ProblemData,
    truncation: int,
    include_initial: bool = True,
    include_boundary: bool = True,
    include_forcing: bool = True,
) -> List[ModeState]:
    """ModeState for n = 1..N with coefficient functions bound to the data."""
    if truncation < 1:
        raise ValueError(f"Invalid truncation: {truncation}\nAt least one mode is required")
    states = []
    for n in range(1, truncation + 1):
        row = ModalCoefficients(
            data,
            problem,
            [n],
            include_initial=include_initial,
            include_boundary=include_boundary,
            include_forcing=include_forcing,
        )
        states.append(
            ModeState.from_problem(
                problem,
                n,
                history_coeff=lambda s, row=row: row.history(s)[0],
                forcing_coeff=lambda t, row=row: row.forcing(t)[0],
            )
        )
    return states


__all__ = ["build_modes", "modal_response", "mode_solve", "mode_solve_steps"]
