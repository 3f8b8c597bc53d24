"""
Exact distributed control by the exponential ansatz.

For each mode the terminal condition y_n(T) = Psi_n becomes the moment
equation

    int_0^T e^{L_n (T-s)} exp_tau(D_n, T - tau - s) U_n(s) ds = R_n(T)

with R_n(T) = Psi_n - s1_n(T) - s2_n(T) - m_n(T). The ansatz
U_n(s) = e^{-L_n (T-s)} A_n reduces the left side to A_n times the
integral of exp_tau(D_n, .) over [-tau, T - tau], which has a closed form.
"""

import logging
import math
from typing import List

import numpy as np

from delay_heat_control.config.defaults import SINGULAR_MODE_RTOL, ZERO_RATE_THRESHOLD
from delay_heat_control.control.models import ControlSeries
from delay_heat_control.core.delayed_exp import DelayedExp, delayed_exp, knots
from delay_heat_control.core.quadrature import integrate
from delay_heat_control.exceptions import ControlBlowup, MissingTarget, SingularMode
from delay_heat_control.problem.models import ProblemData, ReducedProblem
from delay_heat_control.spectral.coefficients import ModalCoefficients, sine_coefficients
from delay_heat_control.spectral.mode_solver import modal_response
from delay_heat_control.spectral.modes import mode_constant_arrays, mode_constants

logger = logging.getLogger(__name__)

_LOG_MAX = math.log(np.finfo(float).max)


def _free_coefficients(data: ProblemData, p: ReducedProblem, modes) -> ModalCoefficients:
    # the data forcing is replaced by the control, so it never enters the residual
    return ModalCoefficients(data, p, modes, include_forcing=False)


def s1n(data: ProblemData, p: ReducedProblem, n: int, t: float) -> float:
    """Contribution of the homogenized history to mode n at time t."""
    constants = mode_constants(p, n)
    coeffs = _free_coefficients(data, p, [n])
    value = modal_response(
        np.array([constants.big_l]),
        np.array([constants.raw_delay]),
        p.tau,
        coeffs.history if coeffs.has_history() else None,
        None,
        t,
        modes=[n],
    )
    return float(value[0])


def s2n(data: ProblemData, p: ReducedProblem, n: int, t: float) -> float:
    """Contribution of the homogenization source M_n to mode n at time t."""
    constants = mode_constants(p, n)
    coeffs = _free_coefficients(data, p, [n])
    value = modal_response(
        np.array([constants.big_l]),
        np.array([constants.raw_delay]),
        p.tau,
        None,
        coeffs.source if coeffs.include_boundary else None,
        t,
        modes=[n],
    )
    return float(value[0])


def _residuals(
    data: ProblemData, p: ReducedProblem, modes: np.ndarray, horizon: float
) -> np.ndarray:
    if data.target is None:
        raise MissingTarget()
    if not horizon > 0:
        raise ValueError(f"Invalid horizon: {horizon}\nThe steering time T must be positive")
    constants = mode_constant_arrays(p, modes)
    coeffs = _free_coefficients(data, p, modes)
    free = modal_response(
        constants.big_l,
        constants.raw_delay,
        p.tau,
        coeffs.history if coeffs.has_history() else None,
        coeffs.forcing if coeffs.has_forcing() else None,
        horizon,
        modes=modes,
    )
    target = sine_coefficients(data.target, p.length, modes)
    lift = coeffs.lift(horizon) if coeffs.include_boundary else np.zeros(modes.size)
    return target - free - lift


def residuals(data: ProblemData, p: ReducedProblem, truncation: int, horizon: float) -> np.ndarray:
    """R_n(T) for n = 1..N in one batched solve."""
    return _residuals(data, p, np.arange(1, truncation + 1), horizon)


def residual(data: ProblemData, p: ReducedProblem, n: int, horizon: float) -> float:
    """
    R_n(T) = Psi_n - s1_n(T) - s2_n(T) - m_n(T).

    Raises:
        MissingTarget: If the data carry no target
    """
    if n < 1:
        raise ValueError(f"Invalid mode index: {n}\nMode indices start at 1")
    return float(_residuals(data, p, np.array([n]), horizon)[0])


def moment_integral(big_d: float, delay: float, horizon: float, mode: int) -> float:
    """
    int_{-tau}^{T-tau} exp_tau(D, s) ds, guarded for singular and degenerate modes.

    Raises:
        SingularMode: If exp_tau(D, T) is numerically 1 while D != 0
    """
    if abs(big_d) < ZERO_RATE_THRESHOLD / delay:
        return float(horizon)
    value = delayed_exp(big_d, delay, horizon)
    if math.isfinite(value) and abs(value - 1.0) < SINGULAR_MODE_RTOL * (1.0 + abs(value)):
        raise SingularMode(mode=mode, horizon=horizon, value=value)
    return DelayedExp(rate=big_d, delay=delay).integral(horizon)


def synthesize(
    data: ProblemData, p: ReducedProblem, truncation: int, horizon: float
) -> ControlSeries:
    """
    Control steering the state to data.target at time T.

    A_n = R_n D_n / (exp_tau(D_n, T) - 1), or R_n / T when D_n = 0.

    Raises:
        MissingTarget: If the data carry no target
        SingularMode: If a mode's moment kernel integrates to zero
        ControlBlowup: If |U_n(0)| = |e^{-L_n T} A_n| overflows
    """
    if truncation < 1:
        raise ValueError(f"Invalid truncation: {truncation}\nAt least one mode is required")
    modes = np.arange(1, truncation + 1)
    constants = mode_constant_arrays(p, modes)
    targets = residuals(data, p, truncation, horizon)

    amplitudes = np.zeros(truncation)
    for i, n in enumerate(modes):
        remainder = float(targets[i])
        big_d = float(constants.big_d[i])
        integral = moment_integral(big_d, p.tau, horizon, int(n))
        if remainder == 0.0:
            continue
        with np.errstate(all="ignore"):
            amplitude = remainder / integral
        if not math.isfinite(amplitude):
            raise ControlBlowup(mode=int(n), log_magnitude=math.inf)
        log_magnitude = -float(constants.big_l[i]) * horizon + math.log(abs(amplitude))
        if log_magnitude > _LOG_MAX:
            raise ControlBlowup(mode=int(n), log_magnitude=log_magnitude)
        amplitudes[i] = amplitude
        logger.debug(
            f"mode {n}: R={remainder:.6e}, A={amplitude:.6e}, log|U(0)|={log_magnitude:.2f}"
        )

    logger.info(f"synthesized control: N={truncation}, T={horizon}")
    return ControlSeries(
        problem=p,
        truncation=truncation,
        horizon=float(horizon),
        amplitudes=amplitudes,
        mode_big_l=constants.big_l,
        mode_big_d=constants.big_d,
        residuals=targets,
    )


def verify_moment(cs: ControlSeries, p: ReducedProblem, n: int) -> float:
    """
    Relative defect |LHS - R_n| / (1 + |R_n|) of mode n's moment equation.

    The left side is integrated after the substitution t = T - tau - s,
    i.e. over [-tau, T - tau] with integrand
    e^{L_n (tau + t)} exp_tau(D_n, t) U_n(T - tau - t), split at the knots.
    """
    if not 1 <= n <= cs.truncation:
        raise ValueError(f"Invalid mode: {n}\nThe control has modes 1..{cs.truncation}")
    big_l = float(cs.mode_big_l[n - 1])
    big_d = float(cs.mode_big_d[n - 1])
    target = float(cs.residuals[n - 1])
    tau, horizon = p.tau, cs.horizon
    if cs.amplitudes[n - 1] == 0.0 and target == 0.0:
        return 0.0

    def integrand(t: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore", invalid="ignore"):
            return (
                np.exp(big_l * (tau + t))
                * delayed_exp(big_d, tau, t)
                * cs.coefficient(n, horizon - tau - t)
            )

    lhs = integrate(integrand, -tau, horizon - tau, breakpoints=knots(tau, horizon))
    return abs(lhs - target) / (1.0 + abs(target))


def moment_defects(cs: ControlSeries, p: ReducedProblem) -> List[float]:
    """verify_moment for every synthesized mode."""
    return [verify_moment(cs, p, int(n)) for n in cs.modes]


__all__ = [
    "moment_defects",
    "moment_integral",
    "residual",
    "residuals",
    "s1n",
    "s2n",
    "synthesize",
    "verify_moment",
]
