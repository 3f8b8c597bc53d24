"""Series solution, sampled fields and the regularity heuristic."""

from .models import Field, RegularityCheck, RegularityReport, SolutionComponents
from .regularity import regularity_check
from .series import (
    SeriesSolution,
    evaluate,
    evaluate_components,
    sample,
    solve_series,
    tail_estimate,
)

__all__ = [
    "Field",
    "RegularityCheck",
    "RegularityReport",
    "SeriesSolution",
    "SolutionComponents",
    "evaluate",
    "evaluate_components",
    "regularity_check",
    "sample",
    "solve_series",
    "tail_estimate",
]
