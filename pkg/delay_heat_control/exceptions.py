"""
Exceptions for delay-heat-control.

Every error fails fast with guidance: the message explains what went
wrong and how to fix it, and the structured context is kept on the
exception as attributes. ``diagnostic()`` renders the same context as a
single ``key=value`` line for machine consumption (the CLI writes it to
stderr).
"""

from typing import Any, Dict, Optional


class DelayHeatError(Exception):
    """Base class for all delay-heat-control errors."""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.context: Dict[str, Any] = context

    @property
    def kind(self) -> str:
        return type(self).__name__

    def diagnostic(self) -> str:
        """One-line machine-parseable reason."""
        return format_diagnostic(self.kind, **self.context)


def format_diagnostic(kind: str, **fields: Any) -> str:
    """
    Render ``kind=<kind> key=value ...``; floats use 6 significant digits.

    Example:
        >>> format_diagnostic("SingularMode", mode=3, horizon=2.0)
        'kind=SingularMode mode=3 horizon=2'
    """
    parts = [f"kind={kind}"]
    parts.extend(f"{key}={_format_value(value)}" for key, value in fields.items())
    return " ".join(parts)


def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    text = str(value)
    return text.replace(" ", "_").replace("\n", "_") if text else '""'


# ---------------------------------------------------------------------------
# Configuration errors (CLI exit code 2)
# ---------------------------------------------------------------------------


class ConfigurationError(DelayHeatError):
    """Invalid problem description, scenario file or data."""


class ProportionalityViolation(ConfigurationError):
    """
    Raised when the drift coefficients admit no common substitution exponent.

    The reduction v = e^{mu x} u removes both drift terms only when
    b1 * a2^2 == b2 * a1^2.
    """

    def __init__(self, a1: float, a2: float, b1: float, b2: float):
        message = (
            "ProportionalityViolation: drift coefficients are not proportional to the diffusion\n"
            "\n"
            "What went wrong:\n"
            f"  b1*a2^2 = {b1 * a2 * a2:.17g} but b2*a1^2 = {b2 * a1 * a1:.17g}\n"
            f"  (a1={a1}, a2={a2}, b1={b1}, b2={b2})\n"
            "\n"
            "How to fix it:\n"
            "  1. Choose b2 = b1 * a2^2 / a1^2 so a single exponent removes both drifts\n"
            "  2. With a2 = 0 (no delayed diffusion) set b2 = 0\n"
            "  3. Or describe the problem directly in reduced form (problem.reduced)\n"
        )
        super().__init__(message, a1=a1, a2=a2, b1=b1, b2=b2)
        self.a1, self.a2, self.b1, self.b2 = a1, a2, b1, b2


class CompatibilityViolation(ConfigurationError):
    """Raised when history, boundary and target data disagree at a corner."""

    def __init__(self, edge: str, time: float, expected: float, actual: float):
        message = (
            f"CompatibilityViolation: data disagree at the {edge} edge at t={time:.17g}\n"
            "\n"
            "What went wrong:\n"
            f"  boundary value {expected:.17g} != data value {actual:.17g}\n"
            "\n"
            "How to fix it:\n"
            "  1. Make the history match the boundary traces:\n"
            "     phi(0,s) = mu1(s), phi(l,s) = mu2(s)\n"
            "  2. For control scenarios make the target match: Psi(0) = mu1(T), Psi(l) = mu2(T)\n"
            "  3. Remember that drifted problems map the right boundary by e^{-mu l}\n"
        )
        super().__init__(message, edge=edge, time=time, expected=expected, actual=actual)
        self.edge = edge
        self.time = time
        self.expected = expected
        self.actual = actual


class MissingTarget(ConfigurationError):
    """Raised when a control operation is requested without a target state."""

    def __init__(self):
        message = (
            "MissingTarget: control synthesis needs a terminal state Psi\n"
            "\n"
            "How to fix it:\n"
            "  1. Add data.target to the scenario file, e.g. target: \"sin(pi*x/l)\"\n"
            "  2. Or pass ProblemData(target=...) when using the library\n"
        )
        super().__init__(message)


class ExpressionError(ConfigurationError):
    """Base class for expression language errors."""


class ExprSyntaxError(ExpressionError):
    """Raised when an expression cannot be parsed."""

    def __init__(self, source: str, offset: int, reason: str):
        pointer = " " * offset + "^"
        message = (
            f"ExprSyntaxError: {reason} at offset {offset}\n"
            f"  {source}\n"
            f"  {pointer}\n"
            "\n"
            "How to fix it:\n"
            "  1. Use +, -, *, /, ^ and parentheses\n"
            "  2. Call functions with one argument: sin(x), cos(x), exp(x), sqrt(x), abs(x)\n"
        )
        super().__init__(message, offset=offset, reason=reason)
        self.source = source
        self.offset = offset
        self.reason = reason


class UnknownIdentifier(ExpressionError):
    """Raised when an expression names something outside the language."""

    def __init__(self, name: str, offset: int, allowed: Optional[str] = None):
        message = (
            f"UnknownIdentifier: '{name}' at offset {offset}\n"
            "\n"
            "How to fix it:\n"
            f"  1. Use only the known names: {allowed or 'x, t, s, pi, tau, l, T'}\n"
            "  2. Functions: sin, cos, exp, sqrt, abs\n"
        )
        super().__init__(message, name=name, offset=offset)
        self.name = name
        self.offset = offset


class UnboundVariable(ExpressionError):
    """Raised when an expression is evaluated without a value for a name."""

    def __init__(self, name: str):
        message = (
            f"UnboundVariable: no value for '{name}'\n"
            "\n"
            "How to fix it:\n"
            "  1. Boundary traces may only use t (or s); targets may only use x\n"
            "  2. Constants tau, l, T come from the problem and run sections\n"
        )
        super().__init__(message, name=name)
        self.name = name


class DomainError(ExpressionError):
    """Raised when an expression leaves the real-valued domain."""

    def __init__(self, operation: str, detail: str = ""):
        message = (
            f"DomainError: {operation} is undefined for the given arguments\n"
            + (f"  {detail}\n" if detail else "")
            + "\n"
            "How to fix it:\n"
            "  1. Avoid poles inside [0,l] x [-tau,T]\n"
            "  2. Keep sqrt arguments and fractional-power bases non-negative\n"
        )
        super().__init__(message, operation=operation)
        self.operation = operation


# ---------------------------------------------------------------------------
# Numerical failures (CLI exit code 3)
# ---------------------------------------------------------------------------


class NumericalError(DelayHeatError):
    """A computation could not be carried out at working precision."""


class QuadratureNonConvergence(NumericalError):
    """Raised when adaptive quadrature exhausts its refinement depth."""

    def __init__(self, lower: float, upper: float, error: float, tolerance: float):
        message = (
            f"QuadratureNonConvergence: integral over [{lower:.6g}, {upper:.6g}] did not converge\n"
            "\n"
            "What went wrong:\n"
            f"  estimated error {error:.3e} above tolerance {tolerance:.3e}\n"
            "\n"
            "How to fix it:\n"
            "  1. Check the data for jumps or singularities inside the domain\n"
            "  2. Smooth discontinuous data or reduce the number of modes\n"
        )
        super().__init__(message, lower=lower, upper=upper, error=error, tolerance=tolerance)
        self.lower = lower
        self.upper = upper
        self.error = error
        self.tolerance = tolerance


class NumericOverflow(NumericalError):
    """Raised when a quantity leaves the floating-point range."""

    def __init__(self, quantity: str, mode: Optional[int] = None):
        where = f" (mode n={mode})" if mode is not None else ""
        message = (
            f"NumericOverflow: {quantity} is not finite{where}\n"
            "\n"
            "How to fix it:\n"
            "  1. Lower the number of modes\n"
            "  2. Shorten the horizon T or the delay tau\n"
        )
        context: Dict[str, Any] = {"quantity": quantity}
        if mode is not None:
            context["mode"] = mode
        super().__init__(message, **context)
        self.quantity = quantity
        self.mode = mode


class SingularMode(NumericalError):
    """Raised when the moment kernel of a mode integrates to zero at the horizon."""

    def __init__(self, mode: int, horizon: float, value: float):
        message = (
            f"SingularMode: mode n={mode} cannot be steered at T={horizon:.17g}\n"
            "\n"
            "What went wrong:\n"
            f"  exp_tau(D_n, T) = {value:.17g} is numerically 1, so the amplitude is undefined\n"
            "\n"
            "How to fix it:\n"
            "  1. Move the horizon T slightly\n"
            "  2. Or lower the number of modes below n\n"
        )
        super().__init__(message, mode=mode, horizon=horizon, value=value)
        self.mode = mode
        self.horizon = horizon
        self.value = value


class ControlBlowup(NumericalError):
    """Raised when a control coefficient overflows at t = 0."""

    def __init__(self, mode: int, log_magnitude: float):
        message = (
            f"ControlBlowup: control coefficient of mode n={mode} overflows\n"
            "\n"
            "What went wrong:\n"
            f"  log|U_n(0)| = {log_magnitude:.6g} exceeds the floating-point range\n"
            "\n"
            "How to fix it:\n"
            "  1. Lower the number of modes below n\n"
            "  2. Smooth the target so high modes carry no residual\n"
            "  3. Lengthen the domain or shorten the horizon\n"
        )
        super().__init__(message, mode=mode, log_magnitude=log_magnitude)
        self.mode = mode
        self.log_magnitude = log_magnitude


class UnstableRun(NumericalError):
    """Raised when the finite-difference solution grows without bound."""

    def __init__(self, time: float, norm: float, data_norm: float):
        message = (
            f"UnstableRun: finite-difference solution exploded at t={time:.6g}\n"
            "\n"
            "What went wrong:\n"
            f"  max|u| = {norm:.3e} exceeds 1e12 x data norm {data_norm:.3e}\n"
            "\n"
            "How to fix it:\n"
            "  1. Reduce dt (the delayed diffusion is explicit)\n"
            "  2. Use scheme implicit-euler for stiff reaction terms\n"
        )
        super().__init__(message, time=time, norm=norm, data_norm=data_norm)
        self.time = time
        self.norm = norm
        self.data_norm = data_norm


class DelayedSliceMissing(NumericalError):
    """Raised when the oracle needs a delayed time it has not computed yet."""

    def __init__(self, time: float, latest: float):
        message = (
            f"DelayedSliceMissing: no stored slice at delayed time t={time:.6g}\n"
            "\n"
            "What went wrong:\n"
            f"  the march has only reached t={latest:.6g}\n"
            "\n"
            "How to fix it:\n"
            "  1. Choose dt smaller than tau so delayed times lie behind the march\n"
        )
        super().__init__(message, time=time, latest=latest)
        self.time = time
        self.latest = latest


__all__ = [
    "DelayHeatError",
    "format_diagnostic",
    "ConfigurationError",
    "ProportionalityViolation",
    "CompatibilityViolation",
    "MissingTarget",
    "ExpressionError",
    "ExprSyntaxError",
    "UnknownIdentifier",
    "UnboundVariable",
    "DomainError",
    "NumericalError",
    "QuadratureNonConvergence",
    "NumericOverflow",
    "SingularMode",
    "ControlBlowup",
    "UnstableRun",
    "DelayedSliceMissing",
]
