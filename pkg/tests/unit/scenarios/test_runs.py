"""Unit tests for the scenario pipelines."""

import csv

import numpy as np
import pytest

from delay_heat_control.config.scenario_config import ScenarioConfig
from delay_heat_control.exceptions import CompatibilityViolation, MissingTarget
from delay_heat_control.scenarios.builder import build_scenario
from delay_heat_control.scenarios.runs import (
    emit_delayed_exp,
    run_check,
    run_control,
    run_solve,
    run_verify,
)


def _read_csv(path):
    with open(path, encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))


def _build(scenario):
    return build_scenario(ScenarioConfig.from_dict(scenario))


class TestRunSolve:
    """solve pipeline."""

    def test_artifacts(self, heat_scenario, tmp_path):
        """Test solution, modes and report are written."""
        result = run_solve(_build(heat_scenario), tmp_path)
        names = [p.name for p in result.files]
        assert names == ["solution.csv", "modes.csv", "report.txt"]
        rows = _read_csv(tmp_path / "solution.csv")
        assert len(rows) == 17 * 9
        assert list(rows[0]) == ["x", "t", "u"]
        modes = _read_csv(tmp_path / "modes.csv")
        assert [row["n"] for row in modes] == [str(n) for n in range(1, 9)]
        assert float(modes[0]["L_n"]) == pytest.approx(-1.0)
        report = (tmp_path / "report.txt").read_text()
        assert report.startswith("verdict: ")
        assert "tail estimate" in report

    def test_analytic_columns(self, heat_scenario, tmp_path):
        """Test the reference adds analytic and error columns."""
        result = run_solve(_build(heat_scenario), tmp_path, analytic="exp(-t)*sin(x)")
        rows = _read_csv(tmp_path / "solution.csv")
        assert list(rows[0]) == ["x", "t", "u", "u_analytic", "abs_error"]
        assert max(float(row["abs_error"]) for row in rows) < 1e-7
        assert any("max analytic error" in line for line in result.summary)

    def test_regularity_skipped_for_few_modes(self, heat_scenario, tmp_path, caplog):
        """Test fewer than 8 modes skip the decay heuristic with a warning."""
        heat_scenario["run"]["modes"] = 4
        run_solve(_build(heat_scenario), tmp_path)
        assert (tmp_path / "report.txt").read_text().startswith("verdict: skipped")
        assert "regularity check skipped" in caplog.text

    def test_original_variables(self, tmp_path):
        """Test drifted scenarios also write the solution in original variables."""
        scenario = _build(
            {
                "problem": {
                    "original": {"a1": 1.0, "a2": 1.0, "b1": 2.0, "b2": 2.0},
                    "tau": 1.0,
                },
                "run": {"T": 0.5, "modes": 8, "sample": {"nx": 5, "nt": 3}},
            }
        )
        result = run_solve(scenario, tmp_path)
        assert "solution_original.csv" in [p.name for p in result.files]
        assert list(_read_csv(tmp_path / "solution_original.csv")[0]) == ["x", "t", "v"]


class TestRunControl:
    """control pipeline."""

    @pytest.fixture
    def steer_scenario(self, heat_scenario):
        heat_scenario["data"] = {"history": "0", "target": "sin(x)"}
        heat_scenario["run"].update({"modes": 2, "fd": {"nx": 32, "dt": 0.01}})
        return heat_scenario

    def test_artifacts(self, steer_scenario, tmp_path):
        """Test control table, field and steering report are written."""
        result = run_control(_build(steer_scenario), tmp_path)
        assert [p.name for p in result.files] == [
            "control.csv",
            "control_field.csv",
            "steering.txt",
        ]
        table = _read_csv(tmp_path / "control.csv")
        assert list(table[0]) == ["n", "L_n", "D_n", "R_n", "A_n"]
        assert float(table[0]["A_n"]) == pytest.approx(1.0)
        assert float(table[1]["A_n"]) == pytest.approx(0.0, abs=1e-10)
        steering = (tmp_path / "steering.txt").read_text()
        assert "series terminal error" in steering
        assert "oracle terminal error: not computed" not in steering

    def test_missing_target(self, heat_scenario, tmp_path):
        """Test a scenario without target cannot be controlled."""
        with pytest.raises(MissingTarget):
            run_control(_build(heat_scenario), tmp_path)

    def test_incompatible_target(self, steer_scenario, tmp_path):
        """Test the target must match the boundary traces at T."""
        steer_scenario["data"]["target"] = "1 + sin(x)"
        with pytest.raises(CompatibilityViolation) as exc_info:
            run_control(_build(steer_scenario), tmp_path)
        assert exc_info.value.time == 1.0


class TestRunVerify:
    """verify pipeline."""

    def test_series_matches_oracle(self, heat_scenario, tmp_path):
        """Test the heat equation agrees with Crank-Nicolson."""
        heat_scenario["run"]["fd"] = {"nx": 64, "dt": 1e-3}
        result = run_verify(_build(heat_scenario), tmp_path)
        rows = _read_csv(tmp_path / "compare.csv")
        assert list(rows[0]) == ["x", "t", "series", "oracle", "difference"]
        assert max(abs(float(row["difference"])) for row in rows) < 2e-3
        text = (tmp_path / "compare.txt").read_text()
        assert "delay snap error" in text
        assert result.summary[0].startswith("max |series - oracle|")


class TestRunCheck:
    """check pipeline."""

    def test_report(self, heat_scenario, tmp_path):
        """Test the report file is written and summarized."""
        result = run_check(_build(heat_scenario), tmp_path)
        assert [p.name for p in result.files] == ["report.txt"]
        assert result.summary


class TestEmitDelayedExp:
    """expfig table."""

    def test_table_values(self, tmp_path):
        """Test hand-computed values of exp_tau(1, t) with tau = 1."""
        emit_delayed_exp(1.0, 1.0, 3.0, 11, tmp_path)
        rows = _read_csv(tmp_path / "delayed_exp.csv")
        table = {float(row["t"]): float(row["exp_tau"]) for row in rows}
        assert len(table) == 11
        assert table[-0.5] == pytest.approx(1.0)
        assert table[0.5] == pytest.approx(1.5)
        assert table[1.5] == pytest.approx(2.625)
        assert table[2.5] == pytest.approx(1.0 + 2.5 + 1.5**2 / 2 + 0.5**3 / 6)
        assert table[-2.0] == 0.0

    def test_knots_comment(self, tmp_path):
        """Test the knot locations are listed in the header comment."""
        emit_delayed_exp(-2.0, 0.5, 1.0, 5, tmp_path)
        lines = (tmp_path / "delayed_exp.csv").read_text().splitlines()
        assert lines[0].startswith("# b=")
        knots = [float(k) for k in lines[1].split(":", 1)[1].split(",")]
        np.testing.assert_allclose(knots, [-0.5, 0.0, 0.5, 1.0])

    def test_script(self, tmp_path):
        """Test the optional plotting script."""
        result = emit_delayed_exp(1.0, 1.0, 3.0, 5, tmp_path, script=True)
        assert (tmp_path / "plot_delayed_exp.py").exists()
        assert len(result.files) == 2

    @pytest.mark.parametrize("samples, t_max", [(1, 3.0), (5, -2.0)])
    def test_rejects_invalid_range(self, tmp_path, samples, t_max):
        """Test too few samples or an empty range are refused."""
        with pytest.raises(ValueError, match="Invalid"):
            emit_delayed_exp(1.0, 1.0, t_max, samples, tmp_path)
