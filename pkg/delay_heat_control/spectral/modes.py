"""Mode constants and per-mode state of the sine decomposition."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Union

import numpy as np

from delay_heat_control.problem.models import ReducedProblem

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
CoefficientFunction = Callable[[ArrayLike], ArrayLike]

_MAX_EXPONENT = math.log(np.finfo(float).max)


class ModeConstants(NamedTuple):
    """L_n, D_n = raw e^{-L_n tau}, the raw delay coefficient and an overflow flag."""

    big_l: float
    big_d: float
    raw_delay: float
    overflow: bool


def mode_constants(p: ReducedProblem, n: int) -> ModeConstants:
    """
    Constants of mode n.

        L_n = c1 - (pi n a1 / l)^2
        raw = c2 - (pi n a2 / l)^2
        D_n = raw e^{-L_n tau}

    ``overflow`` is set when e^{-L_n tau} leaves the floating-point range;
    D_n is then +-inf (or 0 when raw = 0).

    Example:
        >>> mode_constants(ReducedProblem(a1sq=1.0), 2).big_l
        -4.0
    """
    if n < 1:
        raise ValueError(f"Invalid mode index: {n}\nMode indices start at 1")
    k = np.pi * n / p.length
    big_l = p.c1 - p.a1sq * k * k
    raw = p.c2 - p.a2sq * k * k
    exponent = -big_l * p.tau
    if exponent > _MAX_EXPONENT:
        logger.debug(f"mode {n}: e^(-L tau) overflows (exponent {exponent:.1f})")
        big_d = 0.0 if raw == 0.0 else math.copysign(math.inf, raw)
        return ModeConstants(float(big_l), big_d, float(raw), True)
    return ModeConstants(float(big_l), float(raw * math.exp(exponent)), float(raw), False)


def mode_constant_arrays(p: ReducedProblem, modes: np.ndarray) -> ModeConstants:
    """Vectorized mode_constants; fields are arrays over ``modes``."""
    modes = np.asarray(modes, dtype=float)
    k = np.pi * modes / p.length
    big_l = p.c1 - p.a1sq * k * k
    raw = p.c2 - p.a2sq * k * k
    exponent = -big_l * p.tau
    overflow = exponent > _MAX_EXPONENT
    with np.errstate(over="ignore", invalid="ignore"):
        big_d = np.where(
            overflow,
            np.where(raw == 0.0, 0.0, np.copysign(np.inf, raw)),
            raw * np.exp(np.minimum(exponent, _MAX_EXPONENT)),
        )
    return ModeConstants(big_l, big_d, raw, overflow)


def _zero_coefficient(s: ArrayLike) -> ArrayLike:
    return np.zeros(np.shape(s))


@dataclass(frozen=True)
class ModeState:
    """
    One mode of the decomposition: y' = L y + raw y(t - tau) + F(t), y = Phi on [-tau, 0].

    Attributes:
        index: Mode number n >= 1
        big_l: L_n
        big_d: D_n (includes e^{-L_n tau})
        raw_delay: c2 - (pi n a2 / l)^2
        history_coeff: Phi_n(s) on [-tau, 0], broadcasting over arrays
        forcing_coeff: F_n(t) on [0, T], broadcasting over arrays
    """

    index: int
    big_l: float
    big_d: float
    raw_delay: float
    history_coeff: CoefficientFunction = _zero_coefficient
    forcing_coeff: CoefficientFunction = _zero_coefficient

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"Invalid mode index: {self.index}\nMode indices start at 1")

    @classmethod
    def from_problem(
        cls,
        p: ReducedProblem,
        n: int,
        history_coeff: CoefficientFunction = _zero_coefficient,
        forcing_coeff: CoefficientFunction = _zero_coefficient,
    ) -> "ModeState":
        constants = mode_constants(p, n)
        return cls(
            index=n,
            big_l=constants.big_l,
            big_d=constants.big_d,
            raw_delay=constants.raw_delay,
            history_coeff=history_coeff,
            forcing_coeff=forcing_coeff,
        )


__all__ = [
    "ModeConstants",
    "ModeState",
    "mode_constants",
    "mode_constant_arrays",
]
