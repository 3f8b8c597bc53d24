"""Steering verification of a synthesized control."""

import logging
from typing import Optional

import numpy as np

from delay_heat_control.control.models import ControlSeries, SteeringReport
from delay_heat_control.control.synthesis import moment_defects
from delay_heat_control.exceptions import MissingTarget
from delay_heat_control.oracle.finite_difference import solve_fd
from delay_heat_control.oracle.models import FdConfig
from delay_heat_control.problem.models import ProblemData, ReducedProblem, evaluate_on
from delay_heat_control.solution.series import SeriesSolution

logger = logging.getLogger(__name__)

TERMINAL_SAMPLES = 101
"""Points of [0, l] at which the series terminal state is compared with the target."""


def verify_steering(
    cs: ControlSeries,
    data: ProblemData,
    p: ReducedProblem,
    fd: Optional[FdConfig] = None,
    samples: int = TERMINAL_SAMPLES,
) -> SteeringReport:
    """
    Solve with f replaced by the control and measure max_x |u(x, T) - Psi(x)|.

    The series solution is always used; the finite-difference oracle only
    when ``fd`` is given.

    Raises:
        MissingTarget: If the data carry no target
    """
    if data.target is None:
        raise MissingTarget()
    controlled = data.with_forcing(cs)

    series = SeriesSolution.build(p, controlled, cs.truncation, horizon=cs.horizon)
    xs = np.linspace(0.0, p.length, samples)
    target = evaluate_on(data.target, xs)
    series_error = float(np.max(np.abs(series.terminal_profile(xs) - target)))
    logger.info(f"series terminal error {series_error:.3e}")

    oracle_error = None
    if fd is not None:
        field = solve_fd(p, controlled, cs, fd, cs.horizon)
        final = field.values[-1]
        oracle_error = float(np.max(np.abs(final - evaluate_on(data.target, field.xs))))
        logger.info(f"oracle terminal error {oracle_error:.3e}")

    return SteeringReport(
        series_error=series_error,
        oracle_error=oracle_error,
        moment_defects=moment_defects(cs, p),
    )


__all__ = ["verify_steering", "TERMINAL_SAMPLES"]
