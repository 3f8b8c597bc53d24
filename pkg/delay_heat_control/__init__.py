"""
delay-heat-control - heat equations with a discrete delay.

Solves the Dirichlet problem

    u_t = a1^2 u_xx + a2^2 u_xx(t - tau) + c1 u + c2 u(t - tau) + f

by a truncated sine series whose modes are delay ODEs written with the
delayed exponential, synthesizes the distributed control steering the
state to a target at time T, and cross-checks both against an
independent finite-difference solver.

Quick Start:
    >>> import numpy as np
    >>> from delay_heat_control import ProblemData, ReducedProblem, SeriesSolution
    >>> problem = ReducedProblem(a1sq=1.0, a2sq=0.5, c2=-0.3, tau=0.5)
    >>> data = ProblemData(history=lambda x, s: np.sin(x))
    >>> sol = SeriesSolution.build(problem, data, truncation=8, horizon=1.0)
    >>> u = sol.evaluate(np.pi / 2, 1.0)

Control:
    >>> from delay_heat_control import synthesize, verify_steering
    >>> data = ProblemData.zero().with_target(lambda x: np.sin(x))
    >>> cs = synthesize(data, problem, truncation=4, horizon=1.0)
    >>> verify_steering(cs, data, problem).series_error < 1e-6
    True
"""

__version__ = "0.3.0"
__license__ = "MIT"

# Convenience imports for common usage
from delay_heat_control.config import ScenarioConfig
from delay_heat_control.control import ControlSeries, synthesize, verify_moment, verify_steering
from delay_heat_control.core import DelayedExp
from delay_heat_control.oracle import FdConfig, solve_fd
from delay_heat_control.problem import OriginalProblem, ProblemData, ReducedProblem, reduce
from delay_heat_control.solution import Field, SeriesSolution, regularity_check

__all__ = [
    "__version__",
    "ControlSeries",
    "DelayedExp",
    "FdConfig",
    "Field",
    "OriginalProblem",
    "ProblemData",
    "ReducedProblem",
    "ScenarioConfig",
    "SeriesSolution",
    "reduce",
    "regularity_check",
    "solve_fd",
    "synthesize",
    "verify_moment",
    "verify_steering",
]
