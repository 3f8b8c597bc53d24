"""Special functions and quadrature underlying the series representation."""

from .delayed_exp import (
    BEFORE_HISTORY,
    DelayedExp,
    delayed_exp,
    delayed_exp_integral,
    fundamental_solution,
    knots,
    segment_index,
)
from .quadrature import integrate

__all__ = [
    "BEFORE_HISTORY",
    "DelayedExp",
    "delayed_exp",
    "delayed_exp_integral",
    "fundamental_solution",
    "integrate",
    "knots",
    "segment_index",
]
