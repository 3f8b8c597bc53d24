"""
pytest configuration and fixtures for delay-heat-control tests.

Provides small canonical problems, standard data sets and a helper that
writes scenario files.
"""

import logging
from pathlib import Path
from typing import Any, Callable, Dict

import numpy as np
import pytest

from delay_heat_control.config.yaml_loader import dump_yaml
from delay_heat_control.problem.models import ProblemData, ReducedProblem

logger = logging.getLogger(__name__)


@pytest.fixture
def heat_problem() -> ReducedProblem:
    """u_t = u_xx on [0, pi] with an inactive delay tau = 1."""
    return ReducedProblem(a1sq=1.0, tau=1.0, length=np.pi)


@pytest.fixture
def delay_problem() -> ReducedProblem:
    """Canonical problem with delayed diffusion and reaction."""
    return ReducedProblem(a1sq=1.0, a2sq=0.2, c1=0.1, c2=-0.3, tau=0.5, length=np.pi)


@pytest.fixture
def sine_history() -> ProblemData:
    """phi(x, s) = sin x, zero boundaries, no forcing."""
    return ProblemData(history=lambda x, s: np.sin(x) + 0.0 * s)


@pytest.fixture
def isolated_output(tmp_path, monkeypatch) -> Path:
    """Working directory without DHC_OUT_DIR or .env leaking in."""
    monkeypatch.delenv("DHC_OUT_DIR", raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def write_scenario(tmp_path) -> Callable[..., Path]:
    """Write a scenario mapping to YAML and return its path."""

    def _write(scenario: Dict[str, Any], name: str = "scenario.yml") -> Path:
        path = tmp_path / name
        dump_yaml(scenario, path)
        logger.debug(f"scenario written to {path}")
        return path

    return _write


@pytest.fixture
def heat_scenario() -> Dict[str, Any]:
    """Classical heat equation with the first sine mode as history."""
    return {
        "problem": {"reduced": {"a1sq": 1.0}, "tau": 1.0, "l": float(np.pi)},
        "data": {"history": "sin(x)"},
        "run": {"T": 1.0, "modes": 8, "sample": {"nx": 17, "nt": 9}},
    }
