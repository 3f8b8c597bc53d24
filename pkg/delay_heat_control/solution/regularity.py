"""
Coefficient decay heuristic for classical solvability.

With m = ceil(T / tau) the series converges to a classical solution when

    n^{2m+1+delta} max_s [|Phi_n''| + n^2 |Phi_n'| + n^4 |Phi_n|] -> 0
    n^{2(m-k)+1+delta} max_{window k} [|F_n'| + n^2 |F_n|] -> 0   (k = 1..m)

The check estimates the algebraic decay rate of each term by a log-log
fit over the upper half of the retained modes. It is a numerical
heuristic and reports "warn", never an error.
"""

import logging
import math
from typing import List, Optional

import numpy as np

from delay_heat_control.problem.models import ProblemData, ReducedProblem
from delay_heat_control.solution.models import RegularityCheck, RegularityReport
from delay_heat_control.spectral.coefficients import ModalCoefficients

logger = logging.getLogger(__name__)

WINDOW_SAMPLES = 33
"""Sample times per window for maxima and finite-difference derivatives."""

NOISE_LEVEL = 1e-10
"""Coefficients below NOISE_LEVEL * max(1, peak) count as resolved."""

MIN_FIT_POINTS = 3


def decay_exponent(modes: np.ndarray, magnitudes: np.ndarray, floor: float) -> Optional[float]:
    """
    Exponent p of |c_n| ~ n^-p from a log-log least-squares fit.

    Returns ``math.inf`` when fewer than three magnitudes exceed the noise
    floor, and None when the fit is not finite.
    """
    above = magnitudes > floor
    if np.count_nonzero(above) < MIN_FIT_POINTS:
        return math.inf
    with np.errstate(divide="ignore", invalid="ignore"):
        slope, _ = np.polyfit(np.log(modes[above]), np.log(magnitudes[above]), 1)
    if not np.isfinite(slope):
        return None
    return float(-slope)


def _judge(
    quantity: str,
    window: Optional[int],
    modes: np.ndarray,
    magnitudes: np.ndarray,
    threshold: float,
    amplification: float,
) -> RegularityCheck:
    tail = modes >= modes[-1] // 2
    floor = NOISE_LEVEL * max(1.0, float(np.max(magnitudes))) * amplification
    exponent = decay_exponent(modes[tail].astype(float), magnitudes[tail], floor)
    if exponent is None:
        check = RegularityCheck(quantity, window, math.nan, threshold, "warn", "inconclusive fit")
    elif math.isinf(exponent):
        check = RegularityCheck(quantity, window, exponent, threshold, "pass", "below noise floor")
    else:
        verdict = "pass" if exponent > threshold else "warn"
        check = RegularityCheck(quantity, window, exponent, threshold, verdict)
    logger.debug(f"regularity {check.label}: exponent={check.exponent}, threshold={threshold}")
    return check


def _window_maxima(values: np.ndarray, grid: np.ndarray):
    """Maxima over the grid of |c|, |c'|, |c''| per mode and the step used."""
    step = float(grid[1] - grid[0])
    first = np.gradient(values, grid, axis=1, edge_order=2)
    second = np.gradient(first, grid, axis=1, edge_order=2)
    return (
        np.max(np.abs(values), axis=1),
        np.max(np.abs(first), axis=1),
        np.max(np.abs(second), axis=1),
        step,
    )


def regularity_check(
    data: ProblemData, p: ReducedProblem, horizon: float, truncation: int, delta: float
) -> RegularityReport:
    """
    Decay heuristic for the data of a scenario.

    Args:
        data: Canonical data
        p: Canonical problem
        horizon: Final time T
        truncation: Number of modes N (at least 8)
        delta: Decay margin

    Returns:
        RegularityReport with one check per condition

    Example:
        >>> report = regularity_check(data, problem, horizon=1.0, truncation=16, delta=0.5)
        >>> print(report)
        ✅ Regularity check passed
    """
    if truncation < 8:
        raise ValueError(
            f"Invalid truncation: {truncation}\n"
            "The decay fit needs at least 8 modes (use --modes 8 or more)"
        )
    if not horizon > 0:
        raise ValueError(f"Invalid horizon: {horizon}\nThe final time T must be positive")

    windows = math.ceil(horizon / p.tau - 1e-12)
    modes = np.arange(1, truncation + 1)
    n = modes.astype(float)
    coeffs = ModalCoefficients(data, p, modes)
    checks: List[RegularityCheck] = []

    grid = np.linspace(-p.tau, 0.0, WINDOW_SAMPLES)
    phi, phi1, phi2, step = _window_maxima(coeffs.history(grid), grid)
    base = 2 * windows + 1 + delta
    checks.append(_judge("Phi", None, modes, phi, base + 4, 1.0))
    checks.append(_judge("Phi'", None, modes, phi1, base + 2, 1.0 / step))
    checks.append(_judge("Phi''", None, modes, phi2, base, 1.0 / step ** 2))
    combined = phi2 + n ** 2 * phi1 + n ** 4 * phi
    checks.append(_judge("Phi combined", None, modes, combined, base, 1.0 / step ** 2))

    for k in range(1, windows + 1):
        grid = np.linspace((k - 1) * p.tau, min(k * p.tau, horizon), WINDOW_SAMPLES)
        forcing, forcing1, _, step = _window_maxima(coeffs.forcing(grid), grid)
        base = 2 * (windows - k) + 1 + delta
        checks.append(_judge("F", k, modes, forcing, base + 2, 1.0))
        checks.append(_judge("F'", k, modes, forcing1, base, 1.0 / step))
        combined = forcing1 + n ** 2 * forcing
        checks.append(_judge("F combined", k, modes, combined, base, 1.0 / step))

    report = RegularityReport(horizon_windows=windows, delta=delta, checks=checks)
    if report.passed:
        logger.info(f"regularity check passed (m={windows}, delta={delta})")
    else:
        for check in report.warnings:
            logger.warning(f"regularity: {check}")
    return report


__all__ = ["regularity_check", "decay_exponent"]
