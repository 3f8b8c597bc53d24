"""Unit tests for building scenarios from configs."""

import math

import numpy as np
import pytest

from delay_heat_control.config.scenario_config import ScenarioConfig
from delay_heat_control.exceptions import (
    CompatibilityViolation,
    ProportionalityViolation,
    UnboundVariable,
)
from delay_heat_control.scenarios.builder import build_scenario


def _original(**data):
    return ScenarioConfig.from_dict(
        {
            "problem": {
                "original": {"a1": 1.0, "a2": 1.0, "b1": 2.0, "b2": 2.0, "d1": 3.0, "d2": 5.0},
                "tau": 1.0,
                "l": 1.0,
            },
            "data": data,
        }
    )


class TestBuildScenario:
    """Compiling data and reducing the problem."""

    def test_reduced(self, heat_scenario):
        """Test a reduced scenario keeps its coefficients and compiles the data."""
        scenario = build_scenario(ScenarioConfig.from_dict(heat_scenario))
        assert scenario.problem.a1sq == 1.0
        assert scenario.problem.mu == 0.0
        assert scenario.original is None
        assert scenario.horizon == 1.0
        assert scenario.truncation == 8
        assert scenario.data.history(math.pi / 2, -0.5) == pytest.approx(1.0)
        assert scenario.data.target is None

    def test_fd_config(self, heat_scenario):
        """Test the oracle settings come from run.fd."""
        heat_scenario["run"]["fd"] = {"nx": 32, "dt": 0.01, "scheme": "implicit-euler"}
        fd = build_scenario(ScenarioConfig.from_dict(heat_scenario)).fd_config
        assert (fd.nx, fd.dt, fd.scheme, fd.theta) == (32, 0.01, "implicit-euler", 1.0)

    def test_original_is_reduced(self):
        """Test drifted coefficients are mapped to the canonical form."""
        scenario = build_scenario(_original(forcing="1"))
        assert scenario.original is not None
        assert (scenario.problem.mu, scenario.problem.c1, scenario.problem.c2) == (-1.0, 2.0, 4.0)
        # f = e^{-mu x} g with mu = -1
        assert scenario.data.forcing(1.0, 0.0) == pytest.approx(math.e)

    def test_non_proportional_drift(self):
        """Test b1 a2^2 != b2 a1^2 is a configuration error."""
        cfg = ScenarioConfig.from_dict(
            {"problem": {"original": {"a1": 1.0, "a2": 1.0, "b1": 1.0, "b2": 2.0}, "tau": 1.0}}
        )
        with pytest.raises(ProportionalityViolation):
            build_scenario(cfg)

    def test_incompatible_history(self, heat_scenario):
        """Test a history that misses the boundary traces is rejected."""
        heat_scenario["data"] = {"history": "1"}
        with pytest.raises(CompatibilityViolation) as exc_info:
            build_scenario(ScenarioConfig.from_dict(heat_scenario))
        assert exc_info.value.edge == "left"

    def test_slot_variables(self, heat_scenario):
        """Test a boundary trace cannot depend on x."""
        heat_scenario["data"]["bnd_left"] = "x"
        with pytest.raises(UnboundVariable):
            build_scenario(ScenarioConfig.from_dict(heat_scenario))

    def test_constants_in_expressions(self, heat_scenario):
        """Test tau, l and T are bound in every slot."""
        heat_scenario["data"]["forcing"] = "t/T + tau + l"
        scenario = build_scenario(ScenarioConfig.from_dict(heat_scenario))
        assert scenario.data.forcing(0.0, 0.5) == pytest.approx(0.5 + 1.0 + np.pi)

    def test_compile_reference(self, heat_scenario):
        """Test reference solutions are compiled in x and t."""
        scenario = build_scenario(ScenarioConfig.from_dict(heat_scenario))
        reference = scenario.compile_reference("exp(-t)*sin(x)")
        assert reference(math.pi / 2, 1.0) == pytest.approx(math.exp(-1.0))
