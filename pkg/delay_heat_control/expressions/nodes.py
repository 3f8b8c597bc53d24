"""
Syntax tree of the data expression language.

Nodes are immutable and evaluate on numpy arrays, so one call computes
an expression on a whole grid.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Mapping, Union

import numpy as np

from delay_heat_control.exceptions import DomainError, UnboundVariable

Value = Union[float, np.ndarray]
Bindings = Mapping[str, Value]

VARIABLES = ("x", "t", "s")
CONSTANTS = ("pi", "tau", "l", "T")
BUILTIN_CONSTANTS: Dict[str, float] = {"pi": float(np.pi)}


def _checked_sqrt(arg: np.ndarray) -> np.ndarray:
    if np.any(arg < 0):
        raise DomainError("sqrt", f"negative argument {float(np.min(arg)):.6g}")
    return np.sqrt(arg)


def _checked_exp(arg: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        value = np.exp(arg)
    if not np.all(np.isfinite(value)):
        raise DomainError("exp", f"overflow for argument {float(np.max(arg)):.6g}")
    return value


FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sin": np.sin,
    "cos": np.cos,
    "exp": _checked_exp,
    "sqrt": _checked_sqrt,
    "abs": np.abs,
}


class Expr(ABC):
    """Base class of all expression nodes."""

    @abstractmethod
    def evaluate(self, bindings: Bindings) -> np.ndarray:
        """Value of the expression; arrays in the bindings broadcast."""

    @abstractmethod
    def free_names(self) -> FrozenSet[str]:
        """Variables and constants referenced by the expression."""

    @abstractmethod
    def to_source(self) -> str:
        """Fully parenthesized source text that parses back to an equivalent tree."""


@dataclass(frozen=True)
class Number(Expr):
    value: float

    def evaluate(self, bindings: Bindings) -> np.ndarray:
        return np.asarray(self.value, dtype=float)

    def free_names(self) -> FrozenSet[str]:
        return frozenset()

    def to_source(self) -> str:
        text = repr(float(self.value))
        return f"(-{text[1:]})" if self.value < 0 else text


@dataclass(frozen=True)
class Name(Expr):
    name: str

    def evaluate(self, bindings: Bindings) -> np.ndarray:
        if self.name in bindings:
            return np.asarray(bindings[self.name], dtype=float)
        if self.name in BUILTIN_CONSTANTS:
            return np.asarray(BUILTIN_CONSTANTS[self.name])
        raise UnboundVariable(self.name)

    def free_names(self) -> FrozenSet[str]:
        return frozenset({self.name})

    def to_source(self) -> str:
        return self.name


@dataclass(frozen=True)
class Unary(Expr):
    """Unary minus."""

    operand: Expr

    def evaluate(self, bindings: Bindings) -> np.ndarray:
        return -self.operand.evaluate(bindings)

    def free_names(self) -> FrozenSet[str]:
        return self.operand.free_names()

    def to_source(self) -> str:
        return f"(-{self.operand.to_source()})"


def _power(base: np.ndarray, exponent: np.ndarray) -> np.ndarray:
    base, exponent = np.broadcast_arrays(base, exponent)
    fractional = exponent != np.floor(exponent)
    if np.any((base < 0) & fractional):
        raise DomainError("power", "negative base with non-integer exponent")
    if np.any((base == 0) & (exponent < 0)):
        raise DomainError("power", "zero base with negative exponent")
    with np.errstate(over="ignore"):
        return np.power(base, exponent)


def _divide(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    if np.any(right == 0):
        raise DomainError("division", "division by zero")
    return left / right


BINARY_OPERATORS: Dict[str, Callable[[np.ndarray, np.ndarray], np.ndarray]] = {
    "+": np.add,
    "-": np.subtract,
    "*": np.multiply,
    "/": _divide,
    "^": _power,
}


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in BINARY_OPERATORS:
            raise ValueError(f"Invalid operator: '{self.op}'")

    def evaluate(self, bindings: Bindings) -> np.ndarray:
        left = self.left.evaluate(bindings)
        right = self.right.evaluate(bindings)
        return BINARY_OPERATORS[self.op](left, right)

    def free_names(self) -> FrozenSet[str]:
        return self.left.free_names() | self.right.free_names()

    def to_source(self) -> str:
        return f"({self.left.to_source()} {self.op} {self.right.to_source()})"


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr

    def __post_init__(self):
        if self.func not in FUNCTIONS:
            raise ValueError(f"Invalid function: '{self.func}'")

    def evaluate(self, bindings: Bindings) -> np.ndarray:
        return FUNCTIONS[self.func](self.arg.evaluate(bindings))

    def free_names(self) -> FrozenSet[str]:
        return self.arg.free_names()

    def to_source(self) -> str:
        return f"{self.func}({self.arg.to_source()})"


__all__ = [
    "BINARY_OPERATORS",
    "Binary",
    "CONSTANTS",
    "Call",
    "Expr",
    "FUNCTIONS",
    "Name",
    "Number",
    "Unary",
    "VARIABLES",
]
