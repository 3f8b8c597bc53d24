"""Scenario file model for delay-heat-control runs."""

import math
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from delay_heat_control.config.defaults import (
    DEFAULT_DELTA,
    DEFAULT_FD_DT,
    DEFAULT_FD_NX,
    DEFAULT_FD_SCHEME,
    DEFAULT_MODES,
    DEFAULT_SAMPLE_NT,
    DEFAULT_SAMPLE_NX,
)
from delay_heat_control.config.yaml_loader import dump_yaml, load_yaml


class _Section(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")


class OriginalSection(_Section):
    """Coefficients of the drifted equation in original variables."""

    a1: float = Field(gt=0, description="Diffusion amplitude a1")
    a2: float = Field(default=0.0, ge=0, description="Delayed diffusion amplitude a2")
    b1: float = Field(default=0.0, description="Drift coefficient")
    b2: float = Field(default=0.0, description="Delayed drift coefficient")
    d1: float = Field(default=0.0, description="Reaction coefficient")
    d2: float = Field(default=0.0, description="Delayed reaction coefficient")


class ReducedSection(_Section):
    """Coefficients of the canonical equation."""

    a1sq: float = Field(gt=0, description="Diffusion coefficient a1^2")
    a2sq: float = Field(default=0.0, ge=0, description="Delayed diffusion coefficient a2^2")
    c1: float = Field(default=0.0, description="Reaction coefficient")
    c2: float = Field(default=0.0, description="Delayed reaction coefficient")


class ProblemSection(_Section):
    """Equation, delay and domain."""

    original: Optional[OriginalSection] = None
    reduced: Optional[ReducedSection] = None
    tau: float = Field(gt=0, description="Delay")
    length: float = Field(default=math.pi, gt=0, alias="l", description="Domain length")

    @model_validator(mode="after")
    def validate_single_form(self) -> "ProblemSection":
        """Exactly one of original / reduced must be given."""
        if (self.original is None) == (self.reduced is None):
            given = "both" if self.original is not None else "neither"
            raise ValueError(
                f"problem must contain exactly one of 'original' or 'reduced' (found {given})\n"
                "\n"
                "How to fix it:\n"
                "  1. Use 'original: {a1, a2, b1, b2, d1, d2}' for the drifted equation\n"
                "  2. Or 'reduced: {a1sq, a2sq, c1, c2}' for the canonical equation\n"
            )
        return self


class DataSection(_Section):
    """
    Data as expression strings.

    history uses x and s (or t); boundary traces use t (or s); forcing uses
    x and t; target uses x. tau, l, T and pi are available everywhere.
    """

    history: str = Field(default="0", description="Initial history phi(x, s)")
    bnd_left: str = Field(default="0", description="Left boundary trace mu1(t)")
    bnd_right: str = Field(default="0", description="Right boundary trace mu2(t)")
    forcing: str = Field(default="0", description="Inhomogeneity f(x, t)")
    target: Optional[str] = Field(default=None, description="Terminal state Psi(x)")

    @field_validator("history", "bnd_left", "bnd_right", "forcing", "target", mode="before")
    @classmethod
    def validate_expression_text(cls, v: Any) -> Any:
        """Numbers are accepted and stored as text."""
        if isinstance(v, bool):
            raise ValueError(f"Invalid expression: {v!r}\nExpressions are numbers or strings")
        if isinstance(v, (int, float)):
            return repr(float(v))
        if isinstance(v, str) and not v.strip():
            raise ValueError("Invalid expression: empty string\nUse \"0\" for zero data")
        return v


class FdSection(_Section):
    """Finite-difference oracle grid."""

    nx: int = Field(default=DEFAULT_FD_NX, ge=8, description="Spatial intervals")
    dt: float = Field(default=DEFAULT_FD_DT, gt=0, description="Time step")
    scheme: Literal["implicit-euler", "crank-nicolson"] = Field(
        default=DEFAULT_FD_SCHEME, description="Time discretization of current-time terms"
    )


class SampleSection(_Section):
    """Output sampling grid."""

    nx: int = Field(default=DEFAULT_SAMPLE_NX, ge=2, description="Samples in x")
    nt: int = Field(default=DEFAULT_SAMPLE_NT, ge=2, description="Samples in t")


class RunSection(_Section):
    """Horizon, truncation and numerical settings."""

    horizon: float = Field(default=1.0, gt=0, alias="T", description="Final time T")
    modes: int = Field(default=DEFAULT_MODES, ge=1, description="Truncation order N")
    delta: float = Field(default=DEFAULT_DELTA, ge=0, description="Regularity decay margin")
    fd: FdSection = Field(default_factory=FdSection)
    sample: SampleSection = Field(default_factory=SampleSection)
    output_dir: Optional[str] = Field(default=None, description="Artifact directory")


class ScenarioConfig(_Section):
    """
    A complete scenario: problem, data and run settings.

    Example:
        >>> # From YAML file
        >>> cfg = ScenarioConfig.from_yaml("heat.yaml")

        >>> # Zero-data defaults
        >>> cfg = ScenarioConfig.default()
        >>> cfg.run.modes
        16
    """

    problem: ProblemSection
    data: DataSection = Field(default_factory=DataSection)
    run: RunSection = Field(default_factory=RunSection)

    @property
    def is_original(self) -> bool:
        return self.problem.original is not None

    @property
    def constants(self) -> Dict[str, float]:
        """Values of tau, l and T for the expressions."""
        return {"tau": self.problem.tau, "l": self.problem.length, "T": self.run.horizon}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ScenarioConfig":
        return cls.model_validate(data)

    @classmethod
    def from_yaml(cls, file_path: Union[str, Path]) -> "ScenarioConfig":
        """
        Load a scenario file.

        Raises:
            FileNotFoundError: If file doesn't exist
            yaml.YAMLError: If YAML syntax is invalid
            pydantic.ValidationError: If the structure or values are invalid
        """
        return cls.from_dict(load_yaml(Path(file_path)))

    @classmethod
    def default(cls) -> "ScenarioConfig":
        """Zero data on [0, pi] with a1^2 = 1 and tau = 1."""
        return cls(problem=ProblemSection(reduced=ReducedSection(a1sq=1.0), tau=1.0))

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True, exclude_none=True)

    def to_yaml(self, file_path: Union[str, Path]) -> Path:
        return dump_yaml(self.to_dict(), file_path)

    def with_overrides(
        self, modes: Optional[int] = None, output_dir: Optional[str] = None
    ) -> "ScenarioConfig":
        """Copy with CLI overrides applied (validated again)."""
        data = self.to_dict()
        if modes is not None:
            data["run"]["modes"] = modes
        if output_dir is not None:
            data["run"]["output_dir"] = str(output_dir)
        return ScenarioConfig.from_dict(data)


__all__ = [
    "DataSection",
    "FdSection",
    "OriginalSection",
    "ProblemSection",
    "ReducedSection",
    "RunSection",
    "SampleSection",
    "ScenarioConfig",
]
