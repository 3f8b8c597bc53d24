"""Compile expression strings into numpy callables for the data slots."""

import logging
from typing import Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from delay_heat_control.exceptions import UnboundVariable
from delay_heat_control.expressions.nodes import Expr, Number
from delay_heat_control.expressions.parser import parse

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# each slot argument binds these names
_SPACE = ("x",)
_TIME = ("t", "s")


class CompiledExpression:
    """
    An expression bound to its argument names and constants.

    Calling it with arrays broadcasts the arguments and always returns an
    array of the broadcast shape (a float for scalar arguments).

    Attributes:
        source: Original text
        expr: Parsed tree
        arguments: One tuple of names per positional argument
        constants: Values of tau, l, T
        identically_zero: True for the literal 0
    """

    def __init__(
        self,
        source: str,
        arguments: Sequence[Tuple[str, ...]],
        constants: Optional[Mapping[str, float]] = None,
    ):
        self.source = source
        self.expr: Expr = parse(source)
        self.arguments = tuple(arguments)
        self.constants = dict(constants or {})
        self.identically_zero = isinstance(self.expr, Number) and self.expr.value == 0.0

        bound = set(self.constants) | {"pi"}
        for names in self.arguments:
            bound.update(names)
        unbound = sorted(self.expr.free_names() - bound)
        if unbound:
            raise UnboundVariable(unbound[0])

    def __call__(self, *args: ArrayLike) -> ArrayLike:
        if len(args) != len(self.arguments):
            raise TypeError(f"expected {len(self.arguments)} arguments, got {len(args)}")
        arrays = [np.asarray(a, dtype=float) for a in args]
        shape = np.broadcast(*arrays).shape if len(arrays) > 1 else arrays[0].shape
        bindings = dict(self.constants)
        for names, value in zip(self.arguments, arrays):
            for name in names:
                bindings[name] = value
        value = np.broadcast_to(self.expr.evaluate(bindings), shape)
        return float(value) if value.ndim == 0 else np.array(value)

    def __repr__(self) -> str:
        return f"CompiledExpression({self.source!r})"


def compile_space_time(
    source: str, constants: Optional[Mapping[str, float]] = None
) -> CompiledExpression:
    """
    f(x, t) from text; the time argument binds both t and s.

    Example:
        >>> f = compile_space_time("exp(-t)*sin(x)")
        >>> round(f(1.0, 0.5), 12) == round(np.exp(-0.5) * np.sin(1.0), 12)
        True
    """
    return CompiledExpression(source, (_SPACE, _TIME), constants)


def compile_time(
    source: str, constants: Optional[Mapping[str, float]] = None
) -> CompiledExpression:
    """mu(t) from text; binds t and s."""
    return CompiledExpression(source, (_TIME,), constants)


def compile_space(
    source: str, constants: Optional[Mapping[str, float]] = None
) -> CompiledExpression:
    """Psi(x) from text."""
    return CompiledExpression(source, (_SPACE,), constants)


__all__ = ["CompiledExpression", "compile_space", "compile_space_time", "compile_time"]
