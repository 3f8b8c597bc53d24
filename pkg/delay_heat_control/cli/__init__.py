"""CLI commands for delay-heat-control."""

import click

from delay_heat_control import __version__

from .figure_commands import expfig
from .scenario_commands import check, control, solve, verify


@click.group()
@click.version_option(version=__version__, prog_name="delay-heat-control")
@click.option("--verbose", is_flag=True, help="Log pipeline milestones (INFO level)")
@click.pass_context
def main(ctx, verbose):
    """
    delay-heat-control - heat equations with delay: series solutions and exact control.

    Scenarios are YAML files with problem, data and run sections; data are
    arithmetic expressions in x, t, s with the constants pi, tau, l, T.
    """
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose


# Register subcommands
main.add_command(solve)
main.add_command(control)
main.add_command(verify)
main.add_command(expfig)
main.add_command(check)


__all__ = ["main", "solve", "control", "verify", "expfig", "check"]
