"""Scenario configuration, YAML I/O and output directory discovery."""

from .discovery import resolve_output_dir
from .scenario_config import (
    DataSection,
    FdSection,
    OriginalSection,
    ProblemSection,
    ReducedSection,
    RunSection,
    SampleSection,
    ScenarioConfig,
)
from .yaml_loader import dump_yaml, load_yaml

__all__ = [
    "DataSection",
    "FdSection",
    "OriginalSection",
    "ProblemSection",
    "ReducedSection",
    "RunSection",
    "SampleSection",
    "ScenarioConfig",
    "dump_yaml",
    "load_yaml",
    "resolve_output_dir",
]
