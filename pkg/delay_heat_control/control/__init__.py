"""Exact distributed control and its verification."""

from .models import ControlSeries, SteeringReport
from .steering import verify_steering
from .synthesis import (
    moment_defects,
    moment_integral,
    residual,
    residuals,
    s1n,
    s2n,
    synthesize,
    verify_moment,
)

__all__ = [
    "ControlSeries",
    "SteeringReport",
    "moment_defects",
    "moment_integral",
    "residual",
    "residuals",
    "s1n",
    "s2n",
    "synthesize",
    "verify_moment",
    "verify_steering",
]
