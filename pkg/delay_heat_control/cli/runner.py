"""Shared plumbing of the CLI commands: scenario loading, logging and exit codes."""

import logging
import time
from pathlib import Path
from typing import Callable, Optional, Tuple

import click
import yaml
from pydantic import ValidationError

from delay_heat_control.config.defaults import DEFAULT_SCENARIO_FILE
from delay_heat_control.config.discovery import resolve_output_dir
from delay_heat_control.config.scenario_config import ScenarioConfig
from delay_heat_control.exceptions import ConfigurationError, NumericalError
from delay_heat_control.scenarios.builder import Scenario, build_scenario
from delay_heat_control.scenarios.runs import RunResult
from delay_heat_control.utils import progress

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CONFIGURATION = 2
EXIT_NUMERICAL = 3


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Root logging for the CLI: WARNING by default, INFO with --verbose, ERROR with --quiet."""
    level = logging.ERROR if quiet else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)


def load_scenario(
    config: Optional[str], modes: Optional[int], out: Optional[str], quiet: bool
) -> Tuple[Scenario, Path]:
    """
    Read, override and build the scenario; resolve the output directory.

    Without --config the file dhc-scenario.yml in the working directory is
    used, and without that file the zero-data defaults.
    """
    if config:
        cfg = ScenarioConfig.from_yaml(config)
        source = config
    elif (Path.cwd() / DEFAULT_SCENARIO_FILE).exists():
        cfg = ScenarioConfig.from_yaml(Path.cwd() / DEFAULT_SCENARIO_FILE)
        source = str(Path.cwd() / DEFAULT_SCENARIO_FILE)
    else:
        cfg = ScenarioConfig.default()
        source = None
        if not quiet:
            progress.print_info(
                f"No --config and no {DEFAULT_SCENARIO_FILE}: using zero-data defaults"
            )
    if source and not quiet:
        click.echo(f"⚡ Scenario from {source}")
    cfg = cfg.with_overrides(modes=modes)
    output_dir = resolve_output_dir(out, cfg.run.output_dir)
    return build_scenario(cfg), output_dir


def _first_validation_error(error: ValidationError) -> Tuple[str, str]:
    details = error.errors()
    if not details:
        return "", ""
    location = ".".join(str(part) for part in details[0].get("loc", ()))
    return location, details[0].get("msg", "")


def execute(ctx: click.Context, quiet: bool, action: Callable[[], RunResult]) -> None:
    """
    Run ``action`` and translate its outcome into output and an exit code.

    Exit codes: 0 success, 2 configuration errors, 3 numerical failures,
    1 anything unexpected. Failures write one ``error kind=...`` line to
    stderr; the full message follows unless --quiet is given.
    """
    started = time.monotonic()
    try:
        result = action()
    except ConfigurationError as e:
        _fail(ctx, quiet, str(e), e.kind, EXIT_CONFIGURATION, **e.context)
    except NumericalError as e:
        _fail(ctx, quiet, str(e), e.kind, EXIT_NUMERICAL, **e.context)
    except ValidationError as e:
        location, reason = _first_validation_error(e)
        _fail(
            ctx, quiet, str(e), "ValidationError", EXIT_CONFIGURATION, field=location, reason=reason
        )
    except yaml.YAMLError as e:
        _fail(ctx, quiet, str(e), "YAMLError", EXIT_CONFIGURATION)
    except FileNotFoundError as e:
        _fail(ctx, quiet, str(e), "FileNotFound", EXIT_CONFIGURATION, path=e.filename or "")
    except ValueError as e:
        _fail(ctx, quiet, str(e), "InvalidValue", EXIT_CONFIGURATION)
    except (click.exceptions.Exit, SystemExit, KeyboardInterrupt):
        raise
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        _fail(ctx, quiet, f"{type(e).__name__}: {e}", "InternalError", EXIT_INTERNAL)
    else:
        if not quiet:
            elapsed = progress.format_duration(time.monotonic() - started)
            progress.print_success(f"{result.command} finished in {elapsed}")
            for line in result.summary:
                click.echo(f"  {line}")
            for path in result.files:
                click.echo(f"  → {path}")
        ctx.exit(EXIT_OK)


def _fail(ctx: click.Context, quiet: bool, message: str, kind: str, code: int, **fields) -> None:
    if not quiet:
        progress.print_error(message)
    progress.print_diagnostic(kind, **fields)
    ctx.exit(code)


__all__ = [
    "EXIT_CONFIGURATION",
    "EXIT_INTERNAL",
    "EXIT_NUMERICAL",
    "EXIT_OK",
    "configure_logging",
    "execute",
    "load_scenario",
]
