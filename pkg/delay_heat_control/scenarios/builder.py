"""Turn a ScenarioConfig into the canonical problem and its data."""

import logging
from dataclasses import dataclass
from typing import Optional

from delay_heat_control.config.scenario_config import ScenarioConfig
from delay_heat_control.expressions.functions import (
    CompiledExpression,
    compile_space,
    compile_space_time,
    compile_time,
)
from delay_heat_control.oracle.models import FdConfig
from delay_heat_control.problem.models import OriginalProblem, ProblemData, ReducedProblem
from delay_heat_control.problem.reduction import check_compatibility, map_data, reduce

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Scenario:
    """
    A scenario ready to run.

    Attributes:
        config: Validated scenario file
        problem: Canonical problem
        data: Canonical data (mapped by e^{-mu x} for drifted problems)
        original: Drifted problem, None for scenarios given in reduced form
    """

    config: ScenarioConfig
    problem: ReducedProblem
    data: ProblemData
    original: Optional[OriginalProblem] = None

    @property
    def horizon(self) -> float:
        return self.config.run.horizon

    @property
    def truncation(self) -> int:
        return self.config.run.modes

    @property
    def fd_config(self) -> FdConfig:
        fd = self.config.run.fd
        return FdConfig(nx=fd.nx, dt=fd.dt, scheme=fd.scheme)

    def compile_reference(self, source: str) -> CompiledExpression:
        """Reference solution u(x, t) (or v(x, t) for drifted problems)."""
        return compile_space_time(source, self.config.constants)


def build_scenario(cfg: ScenarioConfig) -> Scenario:
    """
    Compile the data expressions and reduce the problem.

    Raises:
        ExpressionError: If an expression is malformed or uses names its slot does not bind
        ProportionalityViolation: If the drift coefficients are not proportional
        CompatibilityViolation: If history and boundary traces disagree at a corner
    """
    constants = cfg.constants
    section = cfg.data
    history = compile_space_time(section.history, constants)
    bnd_left = compile_time(section.bnd_left, constants)
    bnd_right = compile_time(section.bnd_right, constants)
    forcing = compile_space_time(section.forcing, constants)
    target = compile_space(section.target, constants) if section.target is not None else None

    tau = cfg.problem.tau
    length = cfg.problem.length
    if cfg.problem.original is not None:
        coefficients = cfg.problem.original
        original = OriginalProblem(
            a1=coefficients.a1,
            a2=coefficients.a2,
            b1=coefficients.b1,
            b2=coefficients.b2,
            d1=coefficients.d1,
            d2=coefficients.d2,
            tau=tau,
            length=length,
        )
        problem = reduce(original)
        data = map_data(original, history, bnd_left, bnd_right, forcing, target)
        logger.info(f"reduced drifted problem with mu={problem.mu:g}")
    else:
        coefficients = cfg.problem.reduced
        original = None
        problem = ReducedProblem(
            a1sq=coefficients.a1sq,
            a2sq=coefficients.a2sq,
            c1=coefficients.c1,
            c2=coefficients.c2,
            tau=tau,
            length=length,
        )
        data = ProblemData(
            history=history,
            bnd_left=bnd_left,
            bnd_right=bnd_right,
            forcing=forcing,
            target=target,
        )
        check_compatibility(data, problem)

    logger.debug(
        f"scenario: a1sq={problem.a1sq}, a2sq={problem.a2sq}, c1={problem.c1}, "
        f"c2={problem.c2}, tau={tau}, l={length}, T={cfg.run.horizon}"
    )
    return Scenario(config=cfg, problem=problem, data=data, original=original)


__all__ = ["Scenario", "build_scenario"]
