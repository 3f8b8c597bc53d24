"""Problem descriptions and the reduction to canonical form."""

from .models import OriginalProblem, ProblemData, ReducedProblem, evaluate_on
from .reduction import check_compatibility, lift_solution, map_data, reduce

__all__ = [
    "OriginalProblem",
    "ProblemData",
    "ReducedProblem",
    "check_compatibility",
    "evaluate_on",
    "lift_solution",
    "map_data",
    "reduce",
]
