"""Status output helpers for CLI commands."""

import sys
from typing import Any

from delay_heat_control.exceptions import format_diagnostic


def print_success(message: str) -> None:
    """
    Report a finished run on stdout.

    Example:
        >>> print_success("Wrote 3 files")
        ✓ Wrote 3 files
    """
    print(f"✓ {message}")


def print_error(message: str) -> None:
    """
    Report a failure on stderr, before the diagnostic line.

    Example:
        >>> print_error("Scenario file not found")
    """
    print(f"✗ {message}", file=sys.stderr)


def print_info(message: str) -> None:
    """
    Note a choice made on the user's behalf (defaults, discovered files).

    Example:
        >>> print_info("Using zero-data defaults")
        ℹ Using zero-data defaults
    """
    print(f"ℹ {message}")


def diagnostic_line(kind: str, **fields: Any) -> str:
    """
    The single machine-parseable error line.

    Example:
        >>> diagnostic_line("SingularMode", mode=3)
        'error kind=SingularMode mode=3'
    """
    return "error " + format_diagnostic(kind, **fields)


def print_diagnostic(kind: str, **fields: Any) -> None:
    """Write exactly one ``error kind=... key=value`` line to stderr."""
    print(diagnostic_line(kind, **fields), file=sys.stderr)


def format_duration(seconds: float) -> str:
    """
    Wall time of a run; sub-second runs keep two decimals.

    Example:
        >>> format_duration(125)
        '2m 5s'
        >>> format_duration(0.25)
        '0.25s'
    """
    if seconds < 1:
        return f"{seconds:.2f}s"
    minutes, secs = divmod(int(seconds), 60)
    hours, minutes = divmod(minutes, 60)
    parts = [(hours, "h"), (minutes, "m")]
    head = [f"{value}{unit}" for value, unit in parts if value or hours]
    return " ".join(head + [f"{secs}s"])


__all__ = [
    "diagnostic_line",
    "format_duration",
    "print_diagnostic",
    "print_error",
    "print_info",
    "print_success",
]
