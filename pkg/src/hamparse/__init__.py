"""Expression parsing and evaluation for user-defined models."""

from .builder import ExpressionFunction, build_model, evaluate_constant
from .parser import (
    BinaryOp,
    Call,
    Constant,
    Expr,
    Negate,
    Parameter,
    Variable,
    evaluate,
    free_identifiers,
    parse,
    to_source,
    tokenize,
)

__all__ = [
    "BinaryOp",
    "Call",
    "Constant",
    "Expr",
    "ExpressionFunction",
    "Negate",
    "Parameter",
    "Variable",
    "build_model",
    "evaluate",
    "evaluate_constant",
    "free_identifiers",
    "parse",
    "to_source",
    "tokenize",
]
