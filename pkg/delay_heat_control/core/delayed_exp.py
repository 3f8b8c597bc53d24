"""
Delayed exponential function.

``exp_tau(b, t)`` is the piecewise polynomial

    0                                        t < -tau
    1                                        -tau <= t < 0
    sum_{j=0..k} b^j (t - (j-1) tau)^j / j!  (k-1) tau <= t < k tau

It is the solution of y'(t) = b y(t - tau) with y = 1 on [-tau, 0]. All
functions here broadcast over numpy arrays and return plain floats for
scalar input.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np
from scipy.special import gammaln

from delay_heat_control.config.defaults import ZERO_RATE_THRESHOLD

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

BEFORE_HISTORY = -1
"""Segment index returned for times before the history interval."""

MAX_DIRECT_FACTORIAL = 170
"""Largest j whose factorial is a finite double."""


def _as_output(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def _power_over_factorial(
    x: np.ndarray, j: int, log_scale: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    x^j / j!, times e^{log_scale} when given.

    Evaluated directly where that is finite and through logarithms
    elsewhere, so terms with j > 170 or with an overflowing power and an
    underflowing scale stay representable.
    """
    direct = None
    if j <= MAX_DIRECT_FACTORIAL:
        direct = np.power(x, j) / float(math.factorial(j))
        if log_scale is not None:
            direct = direct * np.exp(log_scale)
        if np.all(np.isfinite(direct) | ~np.isfinite(x)):
            return direct

    with np.errstate(divide="ignore"):
        log_magnitude = j * np.log(np.abs(x)) - gammaln(j + 1)
    if log_scale is not None:
        log_magnitude = log_magnitude + log_scale
    sign = np.where(x < 0, -1.0, 1.0) if j % 2 else 1.0
    logged = sign * np.exp(log_magnitude)
    if direct is None:
        return logged
    return np.where(np.isfinite(direct), direct, logged)


def segment_index(delay: float, t: ArrayLike) -> ArrayLike:
    """
    Index k of the segment [(k-1) tau, k tau) containing t.

    k = 0 is the history segment [-tau, 0); times before -tau map to
    ``BEFORE_HISTORY``.

    Example:
        >>> segment_index(0.25, 0.6)
        3
    """
    if delay <= 0:
        raise ValueError(f"delay must be positive, got {delay}")
    t_arr = np.asarray(t, dtype=float)
    k = np.floor(t_arr / delay).astype(int) + 1
    k = np.where(t_arr < -delay, BEFORE_HISTORY, k)
    if k.ndim == 0:
        return int(k)
    return k


def delayed_exp(rate: ArrayLike, delay: float, t: ArrayLike) -> ArrayLike:
    """
    Evaluate exp_tau(rate, t) by direct summation of the active segment.

    ``rate`` and ``t`` broadcast against each other. Overflowing terms
    give +-inf rather than an error.

    Example:
        >>> delayed_exp(2.0, 1.0, 1.5)
        4.5
    """
    if delay <= 0:
        raise ValueError(f"delay must be positive, got {delay}")
    rate_arr = np.asarray(rate, dtype=float)
    t_arr = np.asarray(t, dtype=float)
    rate_arr, t_arr = np.broadcast_arrays(rate_arr, t_arr)
    k = np.asarray(segment_index(delay, t_arr))

    result = np.where(k >= 0, 1.0, 0.0)
    k_max = int(k.max()) if k.size else 0
    # |term_j| <= growth^j / j!, the bound tracked below
    growth = np.abs(rate_arr) * np.maximum(t_arr + delay, 0.0)
    bound = np.ones(result.shape)
    negligible = 0.25 * np.finfo(float).eps
    with np.errstate(over="ignore", invalid="ignore"):
        for j in range(1, k_max + 1):
            active = k >= j
            shift = np.where(active, t_arr - (j - 1) * delay, 0.0)
            term = _power_over_factorial(rate_arr * shift, j)
            result = result + np.where(active, term, 0.0)

            # Later terms shrink by more than half per step and stay below
            # half an ulp of the sum, so adding them leaves it unchanged.
            bound = bound * growth / j
            settled = ~active | (
                (j + 1 > 2.0 * growth) & (bound <= negligible * np.abs(result))
            )
            if np.all(settled):
                break
    return _as_output(result)


def delayed_exp_integral(rate: float, delay: float, horizon: float) -> float:
    """
    Closed form of the integral of exp_tau(rate, s) over [-tau, T - tau].

    Equals (exp_tau(rate, T) - 1) / rate, with the limit T for rates
    below ``ZERO_RATE_THRESHOLD / tau``.

    Raises:
        ValueError: If T < 0
    """
    if horizon < 0:
        raise ValueError(f"integration horizon must be non-negative, got {horizon}")
    if abs(rate) < ZERO_RATE_THRESHOLD / delay:
        return float(horizon)
    return float((delayed_exp(rate, delay, horizon) - 1.0) / rate)


def knots(delay: float, t_max: float) -> List[float]:
    """Knot locations k*tau (k >= -1) up to and including t_max."""
    if delay <= 0:
        raise ValueError(f"delay must be positive, got {delay}")
    count = int(math.floor(t_max / delay + 1e-12))
    return [k * delay for k in range(-1, count + 1)]


def fundamental_solution(
    big_l: ArrayLike, raw_delay: ArrayLike, delay: float, w: ArrayLike
) -> ArrayLike:
    """
    Fundamental solution X(w) of y' = L y + raw y(t - tau).

    X(w) = e^{L w} exp_tau(raw e^{-L tau}, w - tau), summed term by term as

        sum_{j=0..k} raw^j (w - j tau)^j e^{L (w - j tau)} / j!   for k tau <= w < (k+1) tau

    so the factor e^{-L tau} is never formed. X vanishes for w < 0 and
    X(0) = 1. Arguments broadcast against each other.
    """
    big_l_arr = np.asarray(big_l, dtype=float)
    raw_arr = np.asarray(raw_delay, dtype=float)
    w_arr = np.asarray(w, dtype=float)
    big_l_arr, raw_arr, w_arr = np.broadcast_arrays(big_l_arr, raw_arr, w_arr)

    k = np.floor(w_arr / delay).astype(int)
    started = w_arr >= 0
    k_max = int(k[started].max()) if np.any(started) else -1

    result = np.zeros(w_arr.shape)
    with np.errstate(over="ignore", invalid="ignore"):
        for j in range(0, k_max + 1):
            active = started & (k >= j)
            shift = np.where(active, w_arr - j * delay, 0.0)
            if j == 0:
                term = np.exp(big_l_arr * shift)
            else:
                term = _power_over_factorial(raw_arr * shift, j, log_scale=big_l_arr * shift)
            result = result + np.where(active, term, 0.0)
    return _as_output(result)


@dataclass(frozen=True)
class DelayedExp:
    """
    The delayed exponential exp_tau(rate, .) as a value object.

    Example:
        >>> fn = DelayedExp(rate=3.0, delay=1.0)
        >>> fn(0.5)
        2.5
        >>> DelayedExp(rate=2.0, delay=1.0).integral(0.5)
        0.5
    """

    rate: float
    delay: float

    def __post_init__(self):
        if not self.delay > 0:
            raise ValueError(
                f"Invalid delay: {self.delay}\n"
                "The delay tau of exp_tau(b, t) must be strictly positive"
            )

    def __call__(self, t: ArrayLike) -> ArrayLike:
        return delayed_exp(self.rate, self.delay, t)

    def eval(self, t: ArrayLike) -> ArrayLike:
        return delayed_exp(self.rate, self.delay, t)

    def integral(self, horizon: float) -> float:
        return delayed_exp_integral(self.rate, self.delay, horizon)

    def segment(self, t: ArrayLike) -> ArrayLike:
        return segment_index(self.delay, t)

    def knots(self, t_max: float) -> List[float]:
        return knots(self.delay, t_max)


__all__ = [
    "BEFORE_HISTORY",
    "DelayedExp",
    "delayed_exp",
    "delayed_exp_integral",
    "fundamental_solution",
    "knots",
    "segment_index",
]
