"""Scenario orchestration: build the problem from a config, run a pipeline, write artifacts."""

from .builder import Scenario, build_scenario
from .runs import RunResult, emit_delayed_exp, run_check, run_control, run_solve, run_verify

__all__ = [
    "RunResult",
    "Scenario",
    "build_scenario",
    "emit_delayed_exp",
    "run_check",
    "run_control",
    "run_solve",
    "run_verify",
]
