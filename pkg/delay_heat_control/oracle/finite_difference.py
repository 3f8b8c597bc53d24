"""
Finite-difference oracle by the method of steps.

Second-order central differences in x on nx + 1 points. The delayed
terms a2^2 u_xx(t - tau) + c2 u(t - tau) are read from stored slices (or
from the history phi when t - tau <= 0) and treated explicitly; the
current terms a1^2 u_xx + c1 u are implicit Euler or Crank-Nicolson.
Boundary rows are pinned to mu1(t), mu2(t).
"""

import logging
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import splu

from delay_heat_control.config.defaults import UNSTABLE_RUN_FACTOR
from delay_heat_control.exceptions import DelayedSliceMissing, UnstableRun
from delay_heat_control.oracle.models import FdConfig
from delay_heat_control.problem.models import ProblemData, ReducedProblem, evaluate_on
from delay_heat_control.solution.models import Field

logger = logging.getLogger(__name__)

SpaceTimeSource = Callable[[np.ndarray, np.ndarray], np.ndarray]

_TINY = np.finfo(float).tiny


def laplacian(nx: int, h: float) -> sparse.csr_matrix:
    """3-point Laplacian on nx + 1 points with zero boundary rows."""
    main = np.full(nx + 1, -2.0)
    off = np.ones(nx)
    main[[0, -1]] = 0.0
    upper = off.copy()
    lower = off.copy()
    upper[0] = 0.0
    lower[-1] = 0.0
    return sparse.diags([lower, main, upper], [-1, 0, 1], format="csr") / (h * h)


class _History:
    """Stored slices plus the initial history for delayed lookups."""

    def __init__(self, data: ProblemData, xs: np.ndarray, times: np.ndarray, values: np.ndarray):
        self.data = data
        self.xs = xs
        self.times = times
        self.values = values

    def slice(self, s: float, filled: int) -> np.ndarray:
        if s <= 0.0:
            return np.array(evaluate_on(self.data.history, self.xs, s))
        i = int(np.searchsorted(self.times[: filled + 1], s))
        for j in (i - 1, i):
            if 0 <= j <= filled and abs(self.times[j] - s) <= 1e-12 * max(1.0, s):
                return self.values[j]
        if i > filled:
            raise DelayedSliceMissing(time=float(s), latest=float(self.times[filled]))
        left, right = self.times[i - 1], self.times[i]
        weight = (s - left) / (right - left)
        return (1.0 - weight) * self.values[i - 1] + weight * self.values[i]


def solve_fd(
    p: ReducedProblem,
    data: ProblemData,
    source: Optional[SpaceTimeSource],
    cfg: FdConfig,
    horizon: float,
) -> Field:
    """
    March the canonical problem to time T.

    Args:
        p: Canonical problem
        data: History and boundary traces (data.forcing is used when source is None)
        source: Right-hand side f or the synthesized control U
        cfg: Grid and scheme
        horizon: Final time T

    Returns:
        Field on nx + 1 points and every time step

    Raises:
        UnstableRun: If max|u| exceeds 1e12 times the data norm
        DelayedSliceMissing: If a delayed time lies ahead of the march
    """
    if not horizon > 0:
        raise ValueError(f"Invalid horizon: {horizon}\nThe final time T must be positive")
    source = data.forcing if source is None else source

    nx = cfg.nx
    xs = np.linspace(0.0, p.length, nx + 1)
    h = p.length / nx
    steps = cfg.time_grid_size(horizon)
    times = cfg.dt * np.arange(steps + 1)
    times[-1] = horizon
    delay_steps, _ = cfg.delay_steps(p.tau)
    snapped_delay = delay_steps * cfg.dt
    theta = cfg.theta

    lap = laplacian(nx, h)
    interior = sparse.diags(np.r_[0.0, np.ones(nx - 1), 0.0], format="csr")
    current = p.a1sq * lap + p.c1 * interior
    delayed_op = p.a2sq * lap + p.c2 * interior
    logger.info(
        f"fd oracle: nx={nx}, {steps} steps of dt={cfg.dt:g}, delay {delay_steps} steps, "
        f"{cfg.scheme}, explicit delayed diffusion a2^2 dt/h^2={p.a2sq * cfg.dt / h ** 2:.3g}"
    )

    factors: Dict[float, object] = {}

    def solver(step: float):
        key = round(step, 15)
        if key not in factors:
            matrix = sparse.identity(nx + 1, format="csr") - theta * step * current
            matrix = matrix.tolil()
            for row in (0, nx):
                matrix.rows[row] = [row]
                matrix.data[row] = [1.0]
            factors[key] = splu(matrix.tocsc())
        return factors[key]

    def boundary(t: float) -> Tuple[float, float]:
        return float(evaluate_on(data.bnd_left, t)), float(evaluate_on(data.bnd_right, t))

    values = np.empty((steps + 1, nx + 1))
    values[0] = evaluate_on(data.history, xs, 0.0)
    values[0, 0], values[0, -1] = boundary(0.0)
    store = _History(data, xs, times, values)

    data_norm = float(np.max(np.abs(values[0])))
    for s in np.linspace(-p.tau, 0.0, 9):
        data_norm = max(data_norm, float(np.max(np.abs(evaluate_on(data.history, xs, s)))))
    previous_source = np.array(evaluate_on(source, xs, 0.0))
    delayed_now = delayed_op @ store.slice(-snapped_delay, 0)

    for k in range(steps):
        t_next = times[k + 1]
        step = t_next - times[k]
        next_source = np.array(evaluate_on(source, xs, t_next))
        delayed_next = delayed_op @ store.slice(t_next - snapped_delay, k)
        if theta == 1.0:
            explicit = delayed_next + next_source
        else:
            explicit = 0.5 * (delayed_now + delayed_next) + 0.5 * (previous_source + next_source)
            explicit = explicit + (1.0 - theta) * (current @ values[k])
        rhs = values[k] + step * explicit
        rhs[0], rhs[-1] = boundary(t_next)
        values[k + 1] = solver(step).solve(rhs)

        data_norm = max(
            data_norm,
            abs(rhs[0]),
            abs(rhs[-1]),
            float(np.max(np.abs(next_source))) * horizon,
        )
        norm = float(np.max(np.abs(values[k + 1])))
        if not np.isfinite(norm) or norm > UNSTABLE_RUN_FACTOR * max(data_norm, _TINY):
            raise UnstableRun(time=float(t_next), norm=norm, data_norm=data_norm)
        previous_source = next_source
        delayed_now = delayed_next

    return Field(xs=xs, ts=times, values=values)


def residual_fd(
    field: Field,
    p: ReducedProblem,
    data: ProblemData,
    source: Optional[SpaceTimeSource] = None,
    t_window: Optional[Tuple[float, float]] = None,
) -> float:
    """
    Max interior centred residual of the canonical equation on a field.

    u_t - a1^2 u_xx - a2^2 u_xx(t - tau) - c1 u - c2 u(t - tau) - f with
    central differences in x and t. Delayed slices come from the field
    (linear interpolation in t) or from phi when t - tau <= 0. Only
    interior times inside ``t_window`` are used when it is given.
    """
    source = data.forcing if source is None else source
    xs, ts, u = field.xs, field.ts, field.values
    if xs.size < 3 or ts.size < 3:
        return 0.0
    h = xs[1] - xs[0]
    inner_x = xs[1:-1]

    def second_x(row: np.ndarray) -> np.ndarray:
        return (row[2:] - 2.0 * row[1:-1] + row[:-2]) / (h * h)

    def delayed_row(s: float) -> np.ndarray:
        if s <= 0.0:
            return np.array(evaluate_on(data.history, xs, s))
        return field.at_time(s)

    worst = 0.0
    for i in range(1, ts.size - 1):
        t = ts[i]
        if t_window is not None and not t_window[0] <= t <= t_window[1]:
            continue
        u_t = (u[i + 1, 1:-1] - u[i - 1, 1:-1]) / (ts[i + 1] - ts[i - 1])
        lagged = delayed_row(t - p.tau)
        residual = (
            u_t
            - p.a1sq * second_x(u[i])
            - p.a2sq * second_x(lagged)
            - p.c1 * u[i, 1:-1]
            - p.c2 * lagged[1:-1]
            - evaluate_on(source, inner_x, t)
        )
        worst = max(worst, float(np.max(np.abs(residual))))
    return worst


__all__ = ["laplacian", "residual_fd", "solve_fd"]
