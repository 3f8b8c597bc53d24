"""Tabulation of the delayed exponential."""

from typing import Optional

import click

from delay_heat_control.cli.runner import configure_logging, execute
from delay_heat_control.config.discovery import resolve_output_dir
from delay_heat_control.scenarios.runs import emit_delayed_exp


@click.command(name="expfig")
@click.option("-b", "--rate", type=float, default=1.0, show_default=True, help="Rate b")
@click.option(
    "--tau",
    type=click.FloatRange(min=0.0, min_open=True),
    default=1.0,
    show_default=True,
    help="Delay tau",
)
@click.option("--t-max", type=float, help="End of the table (default: 3*tau)")
@click.option(
    "--samples", type=click.IntRange(min=2), default=101, show_default=True, help="Table rows"
)
@click.option("--script", is_flag=True, help="Also write plot_delayed_exp.py")
@click.option(
    "--out",
    type=click.Path(file_okay=False),
    help="Output directory (default: $DHC_OUT_DIR or ./dhc-output)",
)
@click.option("--quiet", is_flag=True, help="Only report errors")
@click.pass_context
def expfig(
    ctx,
    rate: float,
    tau: float,
    t_max: Optional[float],
    samples: int,
    script: bool,
    out: Optional[str],
    quiet: bool,
):
    """
    Write exp_tau(b, t) on [-2 tau, t_max] to delayed_exp.csv.

    The knot locations k*tau are listed in a header comment.

    \b
    Examples:
        delay-heat-control expfig -b 1 --tau 1 --t-max 3 --samples 11
        delay-heat-control expfig -b -2 --script
    """
    configure_logging(bool((ctx.obj or {}).get("verbose")), quiet)

    def action():
        end = 3.0 * tau if t_max is None else t_max
        return emit_delayed_exp(rate, tau, end, samples, resolve_output_dir(out), script=script)

    execute(ctx, quiet, action)


__all__ = ["expfig"]
