"""Scenario commands: solve, control, verify and check."""

import click

from delay_heat_control.cli.runner import configure_logging, execute, load_scenario
from delay_heat_control.scenarios.runs import run_check, run_control, run_solve, run_verify


_SCENARIO_OPTIONS = (
    click.option(
        "--config",
        type=click.Path(dir_okay=False),
        help="Path to the scenario YAML file (default: ./dhc-scenario.yml or zero data)",
    ),
    click.option(
        "--out",
        type=click.Path(file_okay=False),
        help="Output directory (default: run.output_dir, $DHC_OUT_DIR or ./dhc-output)",
    ),
    click.option(
        "--modes",
        type=click.IntRange(min=1),
        help="Truncation order N (overrides run.modes)",
    ),
    click.option("--quiet", is_flag=True, help="Only report errors"),
)


def scenario_options(func):
    """Options shared by every scenario command."""
    for option in reversed(_SCENARIO_OPTIONS):
        func = option(func)
    return func


def _verbose(ctx: click.Context) -> bool:
    return bool((ctx.obj or {}).get("verbose"))


@click.command(name="solve")
@scenario_options
@click.option(
    "--analytic",
    metavar="EXPR",
    help="Reference solution in x and t; adds analytic and error columns",
)
@click.pass_context
def solve(ctx, config, out, modes, quiet, analytic):
    """
    Solve the scenario by the truncated sine series.

    Writes solution.csv, modes.csv and report.txt (plus solution_original.csv
    for problems given in original variables).

    \b
    Examples:
        delay-heat-control solve --config heat.yml
        delay-heat-control solve --config heat.yml --analytic "exp(-t)*sin(x)"
    """
    configure_logging(_verbose(ctx), quiet)

    def action():
        scenario, output_dir = load_scenario(config, modes, out, quiet)
        return run_solve(scenario, output_dir, analytic=analytic)

    execute(ctx, quiet, action)


@click.command(name="control")
@scenario_options
@click.pass_context
def control(ctx, config, out, modes, quiet):
    """
    Synthesize the control steering the state to data.target at time T.

    Writes control.csv, control_field.csv and steering.txt with the series
    and oracle terminal errors and the per-mode moment defects.

    \b
    Examples:
        delay-heat-control control --config steer.yml --modes 4
    """
    configure_logging(_verbose(ctx), quiet)

    def action():
        scenario, output_dir = load_scenario(config, modes, out, quiet)
        return run_control(scenario, output_dir)

    execute(ctx, quiet, action)


@click.command(name="verify")
@scenario_options
@click.pass_context
def verify(ctx, config, out, modes, quiet):
    """
    Cross-check the series solution against the finite-difference oracle.

    Writes compare.csv (pointwise differences) and compare.txt (max norms).
    Coarse oracle grids only degrade the agreement.
    """
    configure_logging(_verbose(ctx), quiet)

    def action():
        scenario, output_dir = load_scenario(config, modes, out, quiet)
        return run_verify(scenario, output_dir)

    execute(ctx, quiet, action)


@click.command(name="check")
@scenario_options
@click.pass_context
def check(ctx, config, out, modes, quiet):
    """
    Run the coefficient decay heuristic only.

    Prints the report and writes it to report.txt.
    """
    configure_logging(_verbose(ctx), quiet)

    def action():
        scenario, output_dir = load_scenario(config, modes, out, quiet)
        return run_check(scenario, output_dir)

    execute(ctx, quiet, action)


__all__ = ["check", "control", "scenario_options", "solve", "verify"]
