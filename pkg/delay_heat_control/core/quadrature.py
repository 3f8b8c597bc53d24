"""
Vectorized adaptive Gauss-Kronrod quadrature.

The integrand receives a whole 1-D array of abscissae and returns an
array of shape ``(..., len(x))``, so every sweep of the adaptive
refinement costs a single call. This is what makes the nested integrals
of the series solution affordable: the spatial projection of the data
onto all modes, at all quadrature times of the outer integral, is one
broadcast evaluation.
"""

import logging
from typing import Callable, Iterable, List, Tuple

import numpy as np

from delay_heat_control.config.defaults import QUAD_EPSABS, QUAD_EPSREL, QUAD_MAX_DEPTH
from delay_heat_control.exceptions import NumericOverflow, QuadratureNonConvergence

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
_XGK_HALF = np.array(
    [
        0.991455371120812639206854697526329,
        0.949107912342758524526189684047851,
        0.864864423359769072789712788640926,
        0.741531185599394439863864773280788,
        0.586087235467691130294144845693013,
        0.405845151377397166906606412076961,
        0.207784955007898467600689403773245,
        0.000000000000000000000000000000000,
    ]
)
_WGK_HALF = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
    ]
)
_WG_HALF = np.array(
    [
        0.0,
        0.129484966168869693270611432679082,
        0.0,
        0.279705391489276667901467771423780,
        0.0,
        0.381830050505118944950369775488975,
        0.0,
        0.417959183673469387755102040816327,
    ]
)

_NODES = np.concatenate([-_XGK_HALF[:-1], _XGK_HALF[::-1]])
_KRONROD_WEIGHTS = np.concatenate([_WGK_HALF[:-1], _WGK_HALF[::-1]])
_GAUSS_WEIGHTS = np.concatenate([_WG_HALF[:-1], _WG_HALF[::-1]])

_MAX_INTERVALS = 50_000
_ROUNDOFF = 50.0 * np.finfo(float).eps


def _apply_rule(
    func: Integrand, lower: np.ndarray, upper: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Kronrod estimates (..., m), error estimates (m,) and |f| integrals (m,)."""
    centre = 0.5 * (lower + upper)
    half = 0.5 * (upper - lower)
    x = (centre[:, None] + half[:, None] * _NODES[None, :]).ravel()
    values = np.asarray(func(x), dtype=float)
    if values.shape[-1:] != x.shape:
        values = np.broadcast_to(values, values.shape[:-1] + x.shape) if values.ndim else (
            np.full(x.shape, float(values))
        )
    values = values.reshape(values.shape[:-1] + (lower.size, _NODES.size))
    if not np.all(np.isfinite(values)):
        raise NumericOverflow("integrand")
    kronrod = (values @ _KRONROD_WEIGHTS) * half
    gauss = (values @ _GAUSS_WEIGHTS) * half
    diff = np.abs(kronrod - gauss)
    error = diff.reshape(-1, lower.size).max(axis=0)
    magnitude = ((np.abs(values) @ _KRONROD_WEIGHTS) * half).reshape(-1, lower.size).max(axis=0)
    return kronrod, error, magnitude


def _initial_edges(a: float, b: float, breakpoints: Iterable[float], pieces: int) -> np.ndarray:
    inner = sorted({float(p) for p in breakpoints if a < p < b})
    edges: List[float] = []
    for left, right in zip([a] + inner, inner + [b]):
        edges.extend(np.linspace(left, right, max(1, pieces) + 1)[:-1])
    edges.append(b)
    return np.asarray(edges)


def integrate(
    func: Integrand,
    a: float,
    b: float,
    *,
    breakpoints: Iterable[float] = (),
    epsabs: float = QUAD_EPSABS,
    epsrel: float = QUAD_EPSREL,
    max_depth: int = QUAD_MAX_DEPTH,
    initial_pieces: int = 1,
) -> np.ndarray:
    """
    Integrate a vector-valued function over [a, b].

    Args:
        func: Maps abscissae of shape (k,) to values of shape (..., k)
        a, b: Integration limits (b < a integrates backwards)
        breakpoints: Points where the integrand may jump or kink; the
            range is split there before any refinement
        epsabs: Absolute tolerance on the max-norm of the total error
        epsrel: Relative tolerance against the max-norm of the result
        max_depth: Maximum number of bisections of any interval
        initial_pieces: Equal pieces each breakpoint-free piece starts with

    Returns:
        Array of shape (...) (a float for scalar integrands)

    Raises:
        QuadratureNonConvergence: If an interval would exceed max_depth
        NumericOverflow: If the integrand is not finite

    Example:
        >>> float(integrate(lambda x: x**2, 0.0, 1.0))
        0.3333333333333333
    """
    if b < a:
        return -integrate(
            func, b, a, breakpoints=breakpoints, epsabs=epsabs, epsrel=epsrel,
            max_depth=max_depth, initial_pieces=initial_pieces,
        )
    if b == a:
        shape_sample = np.asarray(func(np.array([a])), dtype=float)
        zero = np.zeros(shape_sample.shape[:-1])
        return float(zero) if zero.ndim == 0 else zero

    edges = _initial_edges(a, b, breakpoints, initial_pieces)
    lower, upper = edges[:-1], edges[1:]
    depth = np.zeros(lower.size, dtype=int)
    estimates, errors, magnitudes = _apply_rule(func, lower, upper)

    while True:
        total = estimates.sum(axis=-1)
        total_error = float(errors.sum())
        # roundoff floor for integrands that cancel
        floor = _ROUNDOFF * float(magnitudes.sum())
        tolerance = max(epsabs, epsrel * float(np.max(np.abs(total))), floor)
        if total_error <= tolerance:
            break

        # bisect every interval above its fair share of the tolerance
        chosen = errors > tolerance / errors.size
        if not np.any(chosen):
            chosen[np.argmax(errors)] = True

        if depth[chosen].max() >= max_depth or errors.size + chosen.sum() > _MAX_INTERVALS:
            worst = int(np.argmax(np.where(chosen, errors, -1.0)))
            raise QuadratureNonConvergence(
                lower=float(lower[worst]),
                upper=float(upper[worst]),
                error=total_error,
                tolerance=tolerance,
            )

        mid = 0.5 * (lower[chosen] + upper[chosen])
        child_lower = np.concatenate([lower[chosen], mid])
        child_upper = np.concatenate([mid, upper[chosen]])
        child_depth = np.concatenate([depth[chosen], depth[chosen]]) + 1
        child_estimates, child_errors, child_magnitudes = _apply_rule(
            func, child_lower, child_upper
        )

        keep = ~chosen
        lower = np.concatenate([lower[keep], child_lower])
        upper = np.concatenate([upper[keep], child_upper])
        depth = np.concatenate([depth[keep], child_depth])
        estimates = np.concatenate([estimates[..., keep], child_estimates], axis=-1)
        errors = np.concatenate([errors[keep], child_errors])
        magnitudes = np.concatenate([magnitudes[keep], child_magnitudes])

    logger.debug(f"integrate [{a:.6g}, {b:.6g}]: {errors.size} intervals, error {total_error:.2e}")
    return float(total) if np.ndim(total) == 0 else total


__all__ = ["integrate"]
