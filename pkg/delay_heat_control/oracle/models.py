"""Configuration of the finite-difference oracle."""

import logging
import math
from dataclasses import dataclass
from typing import Literal, Tuple

from delay_heat_control.config.defaults import DEFAULT_FD_DT, DEFAULT_FD_NX, DEFAULT_FD_SCHEME

logger = logging.getLogger(__name__)

Scheme = Literal["implicit-euler", "crank-nicolson"]
SCHEMES = ("implicit-euler", "crank-nicolson")

MIN_INTERVALS = 8


@dataclass(frozen=True)
class FdConfig:
    """
    Grid and time discretization of the oracle.

    Attributes:
        nx: Number of spatial intervals (grid has nx + 1 points)
        dt: Time step
        scheme: "implicit-euler" or "crank-nicolson" for the current-time terms

    Example:
        >>> FdConfig(nx=200, dt=0.5 / 2000).delay_steps(0.5)
        (2000, 0.0)
    """

    nx: int = DEFAULT_FD_NX
    dt: float = DEFAULT_FD_DT
    scheme: Scheme = DEFAULT_FD_SCHEME

    def __post_init__(self):
        if self.nx < MIN_INTERVALS:
            raise ValueError(
                f"Invalid nx: {self.nx}\n"
                f"The oracle needs at least {MIN_INTERVALS} spatial intervals"
            )
        if not self.dt > 0:
            raise ValueError(f"Invalid dt: {self.dt}\nThe time step must be strictly positive")
        if self.scheme not in SCHEMES:
            raise ValueError(
                f"Invalid scheme: '{self.scheme}'\n"
                f"Valid options: {', '.join(SCHEMES)}"
            )

    @property
    def theta(self) -> float:
        """Implicitness of the current-time terms."""
        return 1.0 if self.scheme == "implicit-euler" else 0.5

    def delay_steps(self, tau: float) -> Tuple[int, float]:
        """
        Delay offset m = round(tau / dt) (at least 1) and the snap error |tau - m dt|.

        A non-zero snap error is logged as a warning.
        """
        steps = max(1, int(round(tau / self.dt)))
        error = abs(tau - steps * self.dt)
        if error <= 1e-12 * tau:
            error = 0.0
        else:
            logger.warning(
                f"delay tau={tau:g} snapped to {steps} steps of dt={self.dt:g} "
                f"(snap error {error:.3e})"
            )
        return steps, error

    def time_grid_size(self, horizon: float) -> int:
        """Number of steps to reach T; the last one is shortened if dt does not divide T."""
        return max(1, math.ceil(horizon / self.dt - 1e-9))


__all__ = ["FdConfig", "SCHEMES"]
