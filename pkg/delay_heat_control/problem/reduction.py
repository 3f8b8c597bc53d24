"""
Reduction of the drifted problem to canonical form.

The substitution v = e^{mu x} u with mu = -b1 / (2 a1^2) removes both
drift terms when b1 a2^2 = b2 a1^2, leaving reaction coefficients

    c1 = d1 - b1^2 / (4 a1^2)
    c2 = d2 - b2^2 / (4 a2^2)   (c2 = d2 when a2 = 0)
"""

import logging
from typing import Optional

import numpy as np

from delay_heat_control.config.defaults import COMPATIBILITY_SAMPLES, COMPATIBILITY_TOLERANCE
from delay_heat_control.exceptions import CompatibilityViolation, ProportionalityViolation
from delay_heat_control.problem.models import (
    ArrayLike,
    OriginalProblem,
    ProblemData,
    ReducedProblem,
    SpaceFunction,
    SpaceTimeFunction,
    TimeFunction,
    evaluate_on,
)

logger = logging.getLogger(__name__)


def reduce(orig: OriginalProblem) -> ReducedProblem:
    """
    Map the drifted problem to canonical coefficients.

    Raises:
        ProportionalityViolation: If b1*a2^2 != b2*a1^2 (relative 1e-12)

    Example:
        >>> p = reduce(OriginalProblem(a1=1, a2=1, b1=2, b2=2, d1=3, d2=5))
        >>> (p.mu, p.c1, p.c2)
        (-1.0, 2.0, 4.0)
    """
    if not orig.proportional():
        raise ProportionalityViolation(orig.a1, orig.a2, orig.b1, orig.b2)

    a1sq = orig.a1 ** 2
    a2sq = orig.a2 ** 2
    c1 = orig.d1 - orig.b1 ** 2 / (4.0 * a1sq)
    c2 = orig.d2 - orig.b2 ** 2 / (4.0 * a2sq) if a2sq > 0 else float(orig.d2)
    mu = orig.mu
    logger.debug(f"reduced problem: mu={mu}, c1={c1}, c2={c2}")
    return ReducedProblem(
        a1sq=a1sq,
        a2sq=a2sq,
        c1=float(c1),
        c2=float(c2),
        tau=orig.tau,
        length=orig.length,
        mu=float(mu) + 0.0,
    )


def map_data(
    orig: OriginalProblem,
    psi: SpaceTimeFunction,
    theta1: TimeFunction,
    theta2: TimeFunction,
    g: SpaceTimeFunction,
    target: Optional[SpaceFunction] = None,
    samples: int = COMPATIBILITY_SAMPLES,
) -> ProblemData:
    """
    Transform original-variable data to canonical data.

    phi = e^{-mu x} psi, mu1 = theta1, mu2 = e^{-mu l} theta2,
    f = e^{-mu x} g and, for control scenarios, Psi = e^{-mu x} psi_T.

    Raises:
        CompatibilityViolation: If psi(0,s) != theta1(s) or psi(l,s) != theta2(s)
    """
    mu = orig.mu
    length = orig.length
    right_scale = float(np.exp(-mu * length))

    _check_edges(psi, theta1, theta2, orig.tau, length, samples)

    def history(x: ArrayLike, s: ArrayLike) -> ArrayLike:
        return np.exp(-mu * np.asarray(x, dtype=float)) * evaluate_on(psi, x, s)

    def bnd_left(t: ArrayLike) -> ArrayLike:
        return evaluate_on(theta1, t)

    def bnd_right(t: ArrayLike) -> ArrayLike:
        return right_scale * evaluate_on(theta2, t)

    def forcing(x: ArrayLike, t: ArrayLike) -> ArrayLike:
        return np.exp(-mu * np.asarray(x, dtype=float)) * evaluate_on(g, x, t)

    def mapped_target(x: ArrayLike) -> ArrayLike:
        return np.exp(-mu * np.asarray(x, dtype=float)) * evaluate_on(target, x)

    # zero data stays recognizably zero so projections can be skipped
    for mapped, source in (
        (history, psi),
        (bnd_left, theta1),
        (bnd_right, theta2),
        (forcing, g),
        (mapped_target, target),
    ):
        mapped.identically_zero = bool(getattr(source, "identically_zero", False))

    return ProblemData(
        history=history,
        bnd_left=bnd_left,
        bnd_right=bnd_right,
        forcing=forcing,
        target=mapped_target if target is not None else None,
    )


def lift_solution(mu: float, u: SpaceTimeFunction) -> SpaceTimeFunction:
    """
    Return v(x, t) = e^{mu x} u(x, t).

    Example:
        >>> v = lift_solution(0.0, lambda x, t: x + t)
        >>> v(1.0, 2.0)
        3.0
    """

    def lifted(x: ArrayLike, t: ArrayLike) -> ArrayLike:
        value = np.exp(mu * np.asarray(x, dtype=float)) * evaluate_on(u, x, t)
        return float(value) if np.ndim(value) == 0 else value

    return lifted


def _check_edges(
    history: SpaceTimeFunction,
    left: TimeFunction,
    right: TimeFunction,
    tau: float,
    length: float,
    samples: int,
) -> None:
    s = np.linspace(-tau, 0.0, samples)
    for edge, x, trace in (("left", 0.0, left), ("right", length, right)):
        expected = evaluate_on(trace, s)
        actual = evaluate_on(history, x, s)
        mismatch = np.abs(expected - actual)
        bad = np.nonzero(mismatch > COMPATIBILITY_TOLERANCE * (1.0 + np.abs(expected)))[0]
        if bad.size:
            i = int(bad[0])
            raise CompatibilityViolation(
                edge=edge, time=float(s[i]), expected=float(expected[i]), actual=float(actual[i])
            )


def check_compatibility(
    data: ProblemData,
    problem: ReducedProblem,
    horizon: Optional[float] = None,
    samples: int = COMPATIBILITY_SAMPLES,
) -> None:
    """
    Verify corner compatibility of canonical data.

    Checks phi(0,s) = mu1(s), phi(l,s) = mu2(s) on [-tau, 0] and, when a
    target and a horizon are given, Psi(0) = mu1(T), Psi(l) = mu2(T).

    Raises:
        CompatibilityViolation: With the edge and time of the first failure
    """
    _check_edges(data.history, data.bnd_left, data.bnd_right, problem.tau, problem.length, samples)
    if data.target is None or horizon is None:
        return
    for edge, x, trace in (("left", 0.0, data.bnd_left), ("right", problem.length, data.bnd_right)):
        expected = float(evaluate_on(trace, horizon))
        actual = float(evaluate_on(data.target, x))
        if abs(expected - actual) > COMPATIBILITY_TOLERANCE * (1.0 + abs(expected)):
            raise CompatibilityViolation(edge=edge, time=horizon, expected=expected, actual=actual)


__all__ = ["reduce", "map_data", "lift_solution", "check_compatibility"]
