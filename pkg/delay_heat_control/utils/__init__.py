"""Utility helpers for CLI output."""

from .progress import (
    diagnostic_line,
    format_duration,
    print_diagnostic,
    print_error,
    print_info,
    print_success,
)

__all__ = [
    "diagnostic_line",
    "format_duration",
    "print_diagnostic",
    "print_error",
    "print_info",
    "print_success",
]
