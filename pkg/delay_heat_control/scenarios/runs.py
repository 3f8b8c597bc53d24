"""
Scenario pipelines behind the CLI commands.

Each run writes its artifacts into one directory and returns a RunResult
listing the files and a short human summary.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from delay_heat_control.control.steering import verify_steering
from delay_heat_control.control.synthesis import synthesize
from delay_heat_control.core.delayed_exp import DelayedExp
from delay_heat_control.exceptions import MissingTarget
from delay_heat_control.oracle.finite_difference import solve_fd
from delay_heat_control.problem.models import evaluate_on
from delay_heat_control.problem.reduction import check_compatibility
from delay_heat_control.scenarios.builder import Scenario
from delay_heat_control.scenarios.outputs import (
    field_rows,
    format_number,
    write_csv,
    write_field,
    write_text,
)
from delay_heat_control.solution.models import Field, RegularityReport
from delay_heat_control.solution.regularity import regularity_check
from delay_heat_control.solution.series import SeriesSolution
from delay_heat_control.spectral.modes import mode_constant_arrays

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

MIN_REGULARITY_MODES = 8
"""The decay fit uses the upper half of at least this many modes."""


@dataclass
class RunResult:
    """
    Outcome of one scenario run.

    Attributes:
        command: Pipeline name (solve, control, verify, expfig, check)
        output_dir: Directory holding the artifacts
        files: Artifacts written, in order
        summary: Human-readable summary lines
    """

    command: str
    output_dir: Path
    files: List[Path] = field(default_factory=list)
    summary: List[str] = field(default_factory=list)

    def __str__(self) -> str:
        return "\n".join(self.summary)


def _regularity(scenario: Scenario) -> Optional[RegularityReport]:
    if scenario.truncation < MIN_REGULARITY_MODES:
        logger.warning(
            f"regularity check skipped: needs at least {MIN_REGULARITY_MODES} modes, "
            f"got {scenario.truncation}"
        )
        return None
    return regularity_check(
        scenario.data,
        scenario.problem,
        scenario.horizon,
        scenario.truncation,
        scenario.config.run.delta,
    )


def _regularity_lines(report: Optional[RegularityReport]) -> List[str]:
    if report is None:
        return [
            "verdict: skipped",
            f"regularity check needs at least {MIN_REGULARITY_MODES} modes",
        ]
    return [f"verdict: {report.verdict}", str(report)]


def _write_modes(path: Path, scenario: Scenario) -> Path:
    modes = np.arange(1, scenario.truncation + 1)
    constants = mode_constant_arrays(scenario.problem, modes)
    rows = zip(modes, constants.big_l, constants.big_d)
    return write_csv(path, ["n", "L_n", "D_n"], rows)


def run_solve(
    scenario: Scenario, output_dir: PathLike, analytic: Optional[str] = None
) -> RunResult:
    """
    Series solution on the sample grid.

    Writes solution.csv (x, t, u), modes.csv (n, L_n, D_n) and report.txt.
    Drifted scenarios also get solution_original.csv (x, t, v). The
    ``analytic`` reference is given in the scenario's own variables (v for
    drifted scenarios) and adds u_analytic, abs_error columns to the file
    holding that solution.
    """
    out = Path(output_dir)
    result = RunResult(command="solve", output_dir=out)
    sample = scenario.config.run.sample

    solution = SeriesSolution.build(
        scenario.problem, scenario.data, scenario.truncation, horizon=scenario.horizon
    )
    u_field = solution.sample(sample.nx, sample.nt)

    fields = {"u": u_field}
    if scenario.original is not None:
        scale = np.exp(scenario.problem.mu * u_field.xs)
        fields["v"] = Field(xs=u_field.xs, ts=u_field.ts, values=u_field.values * scale[None, :])
    own_column = "v" if scenario.original is not None else "u"

    max_error = None
    for column, sampled in fields.items():
        name = "solution_original.csv" if column == "v" else "solution.csv"
        if analytic is not None and column == own_column:
            reference = Field.from_function(
                scenario.compile_reference(analytic), sampled.xs, sampled.ts
            )
            error = Field(
                xs=sampled.xs, ts=sampled.ts, values=np.abs(sampled.values - reference.values)
            )
            max_error = float(np.max(error.values))
            header = ["x", "t", column, f"{column}_analytic", "abs_error"]
            path = write_csv(out / name, header, field_rows(sampled, reference, error))
        else:
            path = write_field(out / name, sampled, column)
        result.files.append(path)

    result.files.append(_write_modes(out / "modes.csv", scenario))

    report = _regularity(scenario)
    lines = _regularity_lines(report)
    lines.append(f"tail estimate |y_N(T)|: {format_number(solution.tail_estimate())}")
    if max_error is not None:
        lines.append(f"max analytic error: {format_number(max_error)}")
    result.files.append(write_text(out / "report.txt", "\n".join(lines)))

    result.summary.append(
        f"Series solution with N={scenario.truncation} on {sample.nx}x{sample.nt} grid"
    )
    result.summary.append(lines[0])
    if max_error is not None:
        result.summary.append(f"max analytic error {max_error:.3e}")
    return result


def run_control(scenario: Scenario, output_dir: PathLike) -> RunResult:
    """
    Synthesize the control steering the state to the target at T.

    Writes control.csv (n, L_n, D_n, R_n, A_n), control_field.csv (x, t, U)
    and steering.txt (terminal errors and moment defects).

    Raises:
        MissingTarget: If data.target is absent
        CompatibilityViolation: If the target disagrees with mu1(T), mu2(T)
        SingularMode, ControlBlowup: With the offending mode
    """
    if scenario.data.target is None:
        raise MissingTarget()
    check_compatibility(scenario.data, scenario.problem, scenario.horizon)
    out = Path(output_dir)
    result = RunResult(command="control", output_dir=out)
    sample = scenario.config.run.sample

    cs = synthesize(scenario.data, scenario.problem, scenario.truncation, scenario.horizon)
    rows = zip(cs.modes, cs.mode_big_l, cs.mode_big_d, cs.residuals, cs.amplitudes)
    result.files.append(write_csv(out / "control.csv", ["n", "L_n", "D_n", "R_n", "A_n"], rows))

    xs = np.linspace(0.0, scenario.problem.length, sample.nx)
    ts = np.linspace(0.0, scenario.horizon, sample.nt)
    control_field = Field.from_function(cs, xs, ts)
    result.files.append(write_field(out / "control_field.csv", control_field, "U"))

    report = verify_steering(cs, scenario.data, scenario.problem, fd=scenario.fd_config)
    result.files.append(write_text(out / "steering.txt", str(report)))

    result.summary.append(
        f"Control synthesized with N={scenario.truncation}, T={scenario.horizon:g}"
    )
    result.summary.append(f"series terminal error {report.series_error:.3e}")
    if report.oracle_error is not None:
        result.summary.append(f"oracle terminal error {report.oracle_error:.3e}")
    result.summary.append(f"max moment defect {report.max_moment_defect:.3e}")
    return result


def run_verify(scenario: Scenario, output_dir: PathLike) -> RunResult:
    """
    Compare the series solution with the finite-difference oracle.

    Both are compared on the sample grid (the oracle is interpolated).
    Writes compare.csv (x, t, series, oracle, difference) and compare.txt.
    """
    out = Path(output_dir)
    result = RunResult(command="verify", output_dir=out)
    sample = scenario.config.run.sample
    fd = scenario.fd_config

    solution = SeriesSolution.build(
        scenario.problem, scenario.data, scenario.truncation, horizon=scenario.horizon
    )
    series = solution.sample(sample.nx, sample.nt)
    oracle_grid = solve_fd(scenario.problem, scenario.data, None, fd, scenario.horizon)
    tt, xx = np.meshgrid(series.ts, series.xs, indexing="ij")
    resampled = oracle_grid.interpolator()(np.stack([tt.ravel(), xx.ravel()], axis=-1))
    oracle = Field(xs=series.xs, ts=series.ts, values=resampled.reshape(series.shape))
    difference = Field(xs=series.xs, ts=series.ts, values=series.values - oracle.values)
    max_difference = float(np.max(np.abs(difference.values)))
    terminal = float(np.max(np.abs(difference.values[-1])))

    header = ["x", "t", "series", "oracle", "difference"]
    result.files.append(
        write_csv(out / "compare.csv", header, field_rows(series, oracle, difference))
    )
    _, snap_error = fd.delay_steps(scenario.problem.tau)
    lines = [
        f"max |series - oracle|: {format_number(max_difference)}",
        f"max |series - oracle| at T: {format_number(terminal)}",
        f"series modes: {scenario.truncation}",
        f"oracle grid: nx={fd.nx}, dt={fd.dt:g}, scheme={fd.scheme}",
        f"delay snap error: {format_number(snap_error)}",
    ]
    result.files.append(write_text(out / "compare.txt", "\n".join(lines)))
    result.summary.append(f"max |series - oracle| = {max_difference:.3e}")
    return result


def run_check(scenario: Scenario, output_dir: PathLike) -> RunResult:
    """Regularity heuristic only; writes report.txt."""
    out = Path(output_dir)
    result = RunResult(command="check", output_dir=out)
    report = _regularity(scenario)
    lines = _regularity_lines(report)
    result.files.append(write_text(out / "report.txt", "\n".join(lines)))
    result.summary.extend(lines[1:] if report is not None else lines)
    return result


PLOT_SCRIPT = '''"""Plot delayed_exp.csv (needs matplotlib)."""

import csv
import sys

import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "delayed_exp.csv"
knots = []
ts, values = [], []
with open(path, encoding="utf-8") as f:
    for line in f:
        if line.startswith("# knots:"):
            knots = [float(k) for k in line.split(":", 1)[1].split(",")]
            continue
        if line.startswith("#"):
            continue
        break
    for row in csv.DictReader(f, fieldnames=line.strip().split(",")):
        ts.append(float(row["t"]))
        values.append(float(row["exp_tau"]))

fig, ax = plt.subplots()
ax.plot(ts, values)
for knot in knots:
    ax.axvline(knot, color="0.8", linewidth=0.8)
ax.set_xlabel("t")
ax.set_ylabel("exp_tau(b, t)")
fig.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
'''


def emit_delayed_exp(
    rate: float,
    delay: float,
    t_max: float,
    samples: int,
    output_dir: PathLike,
    script: bool = False,
) -> RunResult:
    """
    Tabulate exp_tau(b, t) on [-2 tau, t_max].

    Writes delayed_exp.csv (t, exp_tau) with the knot locations in a
    header comment, and plot_delayed_exp.py when ``script`` is set.
    """
    if samples < 2:
        raise ValueError(f"Invalid samples: {samples}\nAt least 2 samples are required")
    if not t_max > -2.0 * delay:
        raise ValueError(
            f"Invalid t_max: {t_max}\nThe table starts at -2*tau = {-2.0 * delay:g}"
        )
    fn = DelayedExp(rate=rate, delay=delay)
    out = Path(output_dir)
    result = RunResult(command="expfig", output_dir=out)

    ts = np.linspace(-2.0 * delay, t_max, samples)
    values = np.asarray(fn(ts), dtype=float)
    knot_text = ", ".join(format_number(k) for k in fn.knots(t_max))
    comments = [f"b={format_number(rate)}, tau={format_number(delay)}", f"knots: {knot_text}"]
    result.files.append(
        write_csv(out / "delayed_exp.csv", ["t", "exp_tau"], zip(ts, values), comments=comments)
    )
    if script:
        result.files.append(write_text(out / "plot_delayed_exp.py", PLOT_SCRIPT))
    result.summary.append(
        f"exp_tau(b={rate:g}, t) tabulated on [{-2.0 * delay:g}, {t_max:g}] at {samples} points"
    )
    return result


__all__ = [
    "PLOT_SCRIPT",
    "RunResult",
    "emit_delayed_exp",
    "run_check",
    "run_control",
    "run_solve",
    "run_verify",
]
