"""Problem descriptions: original drifted problem, canonical problem and data."""

import logging
from dataclasses import dataclass, replace
from typing import Callable, Optional, Union

import numpy as np

from delay_heat_control.config.defaults import PROPORTIONALITY_RTOL

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]
SpaceTimeFunction = Callable[[ArrayLike, ArrayLike], ArrayLike]
TimeFunction = Callable[[ArrayLike], ArrayLike]
SpaceFunction = Callable[[ArrayLike], ArrayLike]


def _require_positive(name: str, value: float) -> None:
    if not value > 0:
        raise ValueError(f"Invalid {name}: {value}\n{name} must be strictly positive")


@dataclass(frozen=True)
class OriginalProblem:
    """
    Heat equation with delay, drift and reaction (the v-equation).

        v_t = a1^2 v_xx + b1 v_x + d1 v
              + a2^2 v_xx(t-tau) + b2 v_x(t-tau) + d2 v(t-tau) + g

    on [0, length] with Dirichlet data.

    Example:
        >>> orig = OriginalProblem(a1=1.0, a2=1.0, b1=2.0, b2=2.0, d1=3.0, d2=5.0,
        ...                        tau=1.0, length=1.0)
        >>> orig.proportional()
        True
    """

    a1: float
    a2: float = 0.0
    b1: float = 0.0
    b2: float = 0.0
    d1: float = 0.0
    d2: float = 0.0
    tau: float = 1.0
    length: float = float(np.pi)

    def __post_init__(self):
        _require_positive("a1", self.a1)
        _require_positive("tau", self.tau)
        _require_positive("length", self.length)
        if self.a2 < 0:
            raise ValueError(
                f"Invalid a2: {self.a2}\n"
                "The delayed diffusion amplitude a2 must be non-negative"
            )

    def proportional(self) -> bool:
        """True when b1*a2^2 == b2*a1^2 within the relative tolerance."""
        left = self.b1 * self.a2 ** 2
        right = self.b2 * self.a1 ** 2
        scale = max(abs(left), abs(right))
        if scale == 0.0:
            return True
        return abs(left - right) <= PROPORTIONALITY_RTOL * scale

    @property
    def mu(self) -> float:
        """Substitution exponent of v = e^{mu x} u."""
        return -self.b1 / (2.0 * self.a1 ** 2)


@dataclass(frozen=True)
class ReducedProblem:
    """
    Canonical heat equation with delay.

        u_t = a1sq u_xx + a2sq u_xx(t-tau) + c1 u + c2 u(t-tau) + f

    ``mu`` records the substitution exponent when the problem came from
    an original drifted problem (0 otherwise).
    """

    a1sq: float
    a2sq: float = 0.0
    c1: float = 0.0
    c2: float = 0.0
    tau: float = 1.0
    length: float = float(np.pi)
    mu: float = 0.0

    def __post_init__(self):
        _require_positive("a1sq", self.a1sq)
        _require_positive("tau", self.tau)
        _require_positive("length", self.length)
        if self.a2sq < 0:
            raise ValueError(
                f"Invalid a2sq: {self.a2sq}\n"
                "The delayed diffusion coefficient a2^2 must be non-negative"
            )

    def wavenumber(self, n: ArrayLike) -> ArrayLike:
        return np.pi * np.asarray(n, dtype=float) / self.length


def _zero_space_time(x: ArrayLike, t: ArrayLike) -> ArrayLike:
    return np.zeros(np.broadcast(np.asarray(x), np.asarray(t)).shape)


def _zero_time(t: ArrayLike) -> ArrayLike:
    return np.zeros(np.shape(t))


_zero_space_time.identically_zero = True
_zero_time.identically_zero = True


@dataclass(frozen=True)
class ProblemData:
    """
    Data of the canonical problem.

    Attributes:
        history: phi(x, s) on [0, l] x [-tau, 0]
        bnd_left: mu1(t) on [-tau, T]
        bnd_right: mu2(t) on [-tau, T]
        forcing: f(x, t) on [0, l] x [0, T]
        target: Psi(x) on [0, l] (control scenarios only)

    All functions must broadcast over numpy arrays.
    """

    history: SpaceTimeFunction = _zero_space_time
    bnd_left: TimeFunction = _zero_time
    bnd_right: TimeFunction = _zero_time
    forcing: SpaceTimeFunction = _zero_space_time
    target: Optional[SpaceFunction] = None

    @classmethod
    def zero(cls, with_target: bool = False) -> "ProblemData":
        """All-zero data, optionally with the zero target."""
        return cls(target=_zero_time if with_target else None)

    def lift(self, x: ArrayLike, t: ArrayLike, length: float) -> ArrayLike:
        """Affine boundary lift mu1(t) + (mu2(t) - mu1(t)) x / l."""
        left = evaluate_on(self.bnd_left, t)
        right = evaluate_on(self.bnd_right, t)
        return left + (right - left) * np.asarray(x, dtype=float) / length

    def with_forcing(self, forcing: SpaceTimeFunction) -> "ProblemData":
        return replace(self, forcing=forcing)

    def with_target(self, target: Optional[SpaceFunction]) -> "ProblemData":
        return replace(self, target=target)


def evaluate_on(func: Callable[..., ArrayLike], *args: ArrayLike) -> np.ndarray:
    """Call a data function and broadcast its result to the argument shape."""
    arrays = [np.asarray(a, dtype=float) for a in args]
    shape = np.broadcast(*arrays).shape if len(arrays) > 1 else arrays[0].shape
    return np.broadcast_to(np.asarray(func(*arrays), dtype=float), shape)


__all__ = [
    "OriginalProblem",
    "ReducedProblem",
    "ProblemData",
    "evaluate_on",
]
