"""Small arithmetic expression language for scenario data."""

from .functions import CompiledExpression, compile_space, compile_space_time, compile_time
from .nodes import Binary, Call, Expr, Name, Number, Unary
from .parser import eval_expr, parse

__all__ = [
    "Binary",
    "Call",
    "CompiledExpression",
    "Expr",
    "Name",
    "Number",
    "Unary",
    "compile_space",
    "compile_space_time",
    "compile_time",
    "eval_expr",
    "parse",
]
