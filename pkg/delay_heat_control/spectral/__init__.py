"""Sine-series machinery: mode constants, coefficient functions and mode solvers."""

from .coefficients import (
    ModalCoefficients,
    SineSeriesSource,
    forcing_coeff,
    history_coeff,
    lift_coeff,
    sine_coeff,
    sine_coefficients,
    source_coeff,
)
from .mode_solver import build_modes, modal_response, mode_solve, mode_solve_steps
from .modes import ModeConstants, ModeState, mode_constant_arrays, mode_constants

__all__ = [
    "ModalCoefficients",
    "ModeConstants",
    "ModeState",
    "SineSeriesSource",
    "build_modes",
    "forcing_coeff",
    "history_coeff",
    "lift_coeff",
    "modal_response",
    "mode_constant_arrays",
    "mode_constants",
    "mode_solve",
    "mode_solve_steps",
    "sine_coeff",
    "sine_coefficients",
    "source_coeff",
]
