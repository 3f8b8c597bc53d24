"""
Result models of the series solution.

Provides the sampled space-time ``Field``, the operator split of a
solution into its initial, boundary and forcing parts, and the report
of the coefficient decay heuristic.
"""

from dataclasses import dataclass, field
from typing import Callable, List, Literal, Optional, Union

import numpy as np
from scipy.interpolate import RegularGridInterpolator, interp1d

from delay_heat_control.problem.models import evaluate_on

ArrayLike = Union[float, np.ndarray]
Verdict = Literal["pass", "warn"]


def _strictly_increasing(name: str, grid: np.ndarray) -> None:
    if grid.ndim != 1 or grid.size < 1:
        raise ValueError(f"Invalid {name} grid: expected a non-empty 1-D array")
    if np.any(np.diff(grid) <= 0):
        raise ValueError(f"Invalid {name} grid: values must be strictly increasing")


@dataclass(frozen=True)
class Field:
    """
    Values u(x, t) on a tensor grid.

    Attributes:
        xs: Positions, strictly increasing
        ts: Times, strictly increasing
        values: Array of shape (len(ts), len(xs)), finite

    Example:
        >>> f = Field.from_function(lambda x, t: x * t, np.linspace(0, 1, 3), np.array([0.0, 1.0]))
        >>> f.values.shape
        (2, 3)
    """

    xs: np.ndarray
    ts: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ts = np.asarray(self.ts, dtype=float)
        values = np.asarray(self.values, dtype=float)
        _strictly_increasing("x", xs)
        _strictly_increasing("t", ts)
        if values.shape != (ts.size, xs.size):
            raise ValueError(
                f"Invalid field shape: {values.shape}\n"
                f"Expected (len(ts), len(xs)) = ({ts.size}, {xs.size})"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("Invalid field: values must be finite")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ts", ts)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(
        cls, func: Callable[[ArrayLike, ArrayLike], ArrayLike], xs: np.ndarray, ts: np.ndarray
    ) -> "Field":
        xs = np.asarray(xs, dtype=float)
        ts = np.asarray(ts, dtype=float)
        return cls(xs=xs, ts=ts, values=np.array(evaluate_on(func, xs[None, :], ts[:, None])))

    @property
    def shape(self):
        return self.values.shape

    def at_time(self, t: float) -> np.ndarray:
        """Row u(., t), linearly interpolated between stored times."""
        if self.ts.size == 1:
            return self.values[0].copy()
        return interp1d(self.ts, self.values, axis=0, assume_sorted=True)(t)

    def interpolator(self) -> RegularGridInterpolator:
        return RegularGridInterpolator(
            (self.ts, self.xs), self.values, bounds_error=False, fill_value=None
        )

    def max_abs_difference(self, other: "Field") -> float:
        """max |self - other| on this field's grid (other is interpolated if needed)."""
        if np.array_equal(self.xs, other.xs) and np.array_equal(self.ts, other.ts):
            return float(np.max(np.abs(self.values - other.values)))
        tt, xx = np.meshgrid(self.ts, self.xs, indexing="ij")
        resampled = other.interpolator()(np.stack([tt.ravel(), xx.ravel()], axis=-1))
        return float(np.max(np.abs(self.values - resampled.reshape(self.shape))))

    def rows(self):
        """Yield (x, t, u) triples, time-major."""
        for i, t in enumerate(self.ts):
            for j, x in enumerate(self.xs):
                yield float(x), float(t), float(self.values[i, j])


@dataclass(frozen=True)
class SolutionComponents:
    """
    Operator split of the solution.

    Attributes:
        initial: Part driven by the initial history (projection of phi)
        boundary: Part driven by the boundary traces, lift included
        forcing: Part driven by the inhomogeneity f
    """

    initial: ArrayLike
    boundary: ArrayLike
    forcing: ArrayLike

    @property
    def total(self) -> ArrayLike:
        return self.initial + self.boundary + self.forcing


@dataclass
class RegularityCheck:
    """
    One decay condition of the regularity heuristic.

    Attributes:
        quantity: "Phi", "Phi'", "Phi''", "F" or "F'"
        window: Time window k of a forcing quantity (None for history quantities)
        exponent: Measured decay exponent p with |c_n| ~ n^-p (inf when resolved)
        threshold: Required exponent
        verdict: "pass" or "warn"
        note: Why the verdict was reached without a fit, if it was
    """

    quantity: str
    window: Optional[int]
    exponent: float
    threshold: float
    verdict: Verdict
    note: str = ""

    @property
    def label(self) -> str:
        return self.quantity if self.window is None else f"{self.quantity}[window {self.window}]"

    def __str__(self) -> str:
        marker = "✅" if self.verdict == "pass" else "⚠️ "
        measured = "resolved" if np.isinf(self.exponent) else f"{self.exponent:.2f}"
        text = f"{marker} {self.label}: decay {measured} (needs > {self.threshold:.2f})"
        if self.note:
            text += f" [{self.note}]"
        return text


@dataclass
class RegularityReport:
    """
    Outcome of the coefficient decay heuristic.

    Attributes:
        horizon_windows: m = ceil(T / tau)
        delta: Decay margin
        checks: Individual conditions
    """

    horizon_windows: int
    delta: float
    checks: List[RegularityCheck] = field(default_factory=list)

    @property
    def verdict(self) -> Verdict:
        return "pass" if all(c.verdict == "pass" for c in self.checks) else "warn"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def warnings(self) -> List[RegularityCheck]:
        return [c for c in self.checks if c.verdict == "warn"]

    def __str__(self) -> str:
        if self.passed:
            head = "✅ Regularity check passed"
        else:
            warned = f"{len(self.warnings)} of {len(self.checks)} conditions"
            head = f"⚠️  Regularity check warns ({warned})"
        lines = [head, f"m = {self.horizon_windows}, delta = {self.delta:g}"]
        lines.extend(f"  {check}" for check in self.checks)
        return "\n".join(lines)


__all__ = ["Field", "RegularityCheck", "RegularityReport", "SolutionComponents"]
