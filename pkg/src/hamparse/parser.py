"""Scalar expressions of t for user-defined m(t), omega^2(t) and f(t).

Grammar (whitespace insensitive, no implicit multiplication)::

    expr    = term { ("+" | "-") term } ;
    term    = unary { ("*" | "/") unary } ;
    unary   = "-" unary | power ;
    power   = atom [ "^" unary ] ;            (* right associative *)
    atom    = number | name | name "(" expr ")" | "(" expr ")" ;

Names are the variable ``t``, the builtin constants ``pi`` and ``e``, the
functions below, or parameters bound at evaluation time.
"""

import logging
import math
import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Iterator, List, Mapping, NamedTuple, Optional, Union

from ..errors import ExpressionSyntaxError, NonFiniteResult, UnboundParameter, UnknownIdentifier

logger = logging.getLogger(__name__)

FUNCTIONS: Dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "sqrt": math.sqrt,
    "tanh": math.tanh,
    "cosh": math.cosh,
    "sinh": math.sinh,
    "log": math.log,
}

BUILTIN_CONSTANTS: Dict[str, float] = {"pi": math.pi, "e": math.e}

TIME_VARIABLE = "t"

BINARY_OPERATORS: Dict[str, Callable[[float, float], float]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
    "^": math.pow,
}

_TOKEN_PATTERNS = {
    "number": r"(?:\d+\.?\d*|\.\d+)(?:[eE][+\-]?\d+)?",
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "op": r"[+\-*/^]",
    "lpar": r"\(",
    "rpar": r"\)",
    "skip": r"\s+",
    "error": r".",
}
_TOKEN_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in _TOKEN_PATTERNS.items()))


class Token(NamedTuple):
    type: str
    value: str
    offset: int


# Expression tree

@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class Variable:
    """The time variable t."""


@dataclass(frozen=True)
class Parameter:
    name: str


@dataclass(frozen=True)
class Negate:
    operand: "Expr"


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    function: str
    argument: "Expr"


Expr = Union[Constant, Variable, Parameter, Negate, BinaryOp, Call]


def tokenize(source: str) -> Iterator[Token]:
    for match in _TOKEN_REGEX.finditer(source):
        kind = match.lastgroup
        value = match.group()
        if kind == "skip":
            continue
        if kind == "error":
            raise ExpressionSyntaxError(f"unexpected character {value!r}", source, _byte_offset(source, match.start()))
        yield Token(kind, value, match.start())


class _Parser:
    """Recursive-descent parser over a token list."""

    def __init__(self, source: str, known_parameters: Optional[FrozenSet[str]], allow_time: bool = True):
        self.source = source
        self.tokens: List[Token] = list(tokenize(source))
        self.position = 0
        self.known_parameters = known_parameters
        self.allow_time = allow_time

    def peek(self) -> Optional[Token]:
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return None

    def advance(self) -> Token:
        token = self.peek()
        if token is None:
            self.fail("unexpected end of expression")
        self.position += 1
        return token

    def offset_of(self, token: Token) -> int:
        return _byte_offset(self.source, token.offset)

    def fail(self, message: str, token: Optional[Token] = None) -> None:
        offset = len(self.source) if token is None else token.offset
        raise ExpressionSyntaxError(message, self.source, _byte_offset(self.source, offset))

    def expect(self, kind: str, what: str) -> Token:
        token = self.peek()
        if token is None:
            self.fail(f"expected {what}")
        if token.type != kind:
            self.fail(f"expected {what}, found {token.value!r}", token)
        return self.advance()

    def parse(self) -> Expr:
        if not self.tokens:
            self.fail("empty expression")
        tree = self.expression()
        leftover = self.peek()
        if leftover is not None:
            self.fail(f"unexpected {leftover.value!r}", leftover)
        return tree

    def expression(self) -> Expr:
        left = self.term()
        while self._at_op("+", "-"):
            op = self.advance().value
            left = _binary(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self._at_op("*", "/"):
            op = self.advance().value
            left = _binary(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self._at_op("-"):
            self.advance()
            operand = self.unary()
            if isinstance(operand, Constant):
                return Constant(-operand.value)
            return Negate(operand)
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._at_op("^"):
            self.advance()
            return _binary("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        token = self.peek()
        if token is None:
            self.fail("expected a number, name or '('")
        if token.type == "number":
            self.advance()
            return Constant(float(token.value))
        if token.type == "lpar":
            self.advance()
            inner = self.expression()
            self.expect("rpar", "')'")
            return inner
        if token.type == "name":
            self.advance()
            return self.name(token)
        self.fail(f"unexpected {token.value!r}", token)

    def name(self, token: Token) -> Expr:
        following = self.peek()
        if following is not None and following.type == "lpar":
            if token.value not in FUNCTIONS:
                raise UnknownIdentifier(f"unknown function {token.value!r} at offset {self.offset_of(token)}")
            self.advance()
            argument = self.expression()
            self.expect("rpar", "')'")
            return _call(token.value, argument)
        if token.value in FUNCTIONS:
            self.fail(f"function {token.value!r} must be called with '('", token)
        if token.value == TIME_VARIABLE:
            if not self.allow_time:
                raise UnknownIdentifier(
                    f"the variable {TIME_VARIABLE!r} is not allowed in a constant, at offset {self.offset_of(token)}"
                )
            return Variable()
        if (
            self.known_parameters is not None
            and token.value not in self.known_parameters
            and token.value not in BUILTIN_CONSTANTS
        ):
            raise UnknownIdentifier(f"unknown identifier {token.value!r} at offset {self.offset_of(token)}")
        return Parameter(token.value)

    def _at_op(self, *ops: str) -> bool:
        token = self.peek()
        return token is not None and token.type == "op" and token.value in ops


def parse(
    source: str,
    known_parameters: Optional[FrozenSet[str]] = None,
    allow_time: bool = True,
) -> Expr:
    """Parse expression source into an immutable tree.

    Args:
        source: Expression text
        known_parameters: When given, any name outside it (and outside t, pi, e)
            is rejected at parse time
        allow_time: When false, the variable t is rejected (constant fields)

    Raises:
        ExpressionSyntaxError: With the byte offset of the offending token
        UnknownIdentifier: For unknown functions, undeclared parameters, or t when not allowed
    """
    if not source or not source.strip():
        raise ExpressionSyntaxError("empty expression", source or "", 0)
    known = frozenset(known_parameters) if known_parameters is not None else None
    return _Parser(source, known, allow_time).parse()


def evaluate(expr: Expr, t: float, params: Optional[Mapping[str, float]] = None) -> float:
    """Evaluate an expression at time t in IEEE double precision.

    Raises:
        NonFiniteResult: On domain errors, overflow, division by zero or a non-finite value
        UnboundParameter: If a parameter has no value
    """
    value = _evaluate(expr, float(t), params or {})
    if not math.isfinite(value):
        raise NonFiniteResult(f"expression evaluated to {value} at t={t}")
    return value


def _evaluate(expr: Expr, t: float, params: Mapping[str, float]) -> float:
    if isinstance(expr, Constant):
        return expr.value
    if isinstance(expr, Variable):
        return t
    if isinstance(expr, Parameter):
        if expr.name in params:
            return float(params[expr.name])
        if expr.name in BUILTIN_CONSTANTS:
            return BUILTIN_CONSTANTS[expr.name]
        raise UnboundParameter(f"parameter {expr.name!r} has no value")
    if isinstance(expr, Negate):
        return -_evaluate(expr.operand, t, params)
    try:
        if isinstance(expr, BinaryOp):
            left = _evaluate(expr.left, t, params)
            right = _evaluate(expr.right, t, params)
            return BINARY_OPERATORS[expr.op](left, right)
        if isinstance(expr, Call):
            return FUNCTIONS[expr.function](_evaluate(expr.argument, t, params))
    except (ValueError, OverflowError, ZeroDivisionError) as e:
        raise NonFiniteResult(f"{to_source(expr)} is not finite at t={t}: {e}") from e
    raise TypeError(f"not an expression node: {expr!r}")


def to_source(expr: Expr) -> str:
    """Print an expression fully parenthesized so that parse(to_source(e)) == e."""
    if isinstance(expr, Constant):
        text = repr(expr.value)
        return f"({text})" if expr.value < 0 or text.startswith("-") else text
    if isinstance(expr, Variable):
        return TIME_VARIABLE
    if isinstance(expr, Parameter):
        return expr.name
    if isinstance(expr, Negate):
        return f"(-{to_source(expr.operand)})"
    if isinstance(expr, BinaryOp):
        return f"({to_source(expr.left)} {expr.op} {to_source(expr.right)})"
    if isinstance(expr, Call):
        return f"{expr.function}({to_source(expr.argument)})"
    raise TypeError(f"not an expression node: {expr!r}")


def free_identifiers(expr: Expr) -> FrozenSet[str]:
    """Names of every parameter (including builtin constants) used by an expression."""
    if isinstance(expr, Parameter):
        return frozenset({expr.name})
    if isinstance(expr, Negate):
        return free_identifiers(expr.operand)
    if isinstance(expr, BinaryOp):
        return free_identifiers(expr.left) | free_identifiers(expr.right)
    if isinstance(expr, Call):
        return free_identifiers(expr.argument)
    return frozenset()


def _binary(op: str, left: Expr, right: Expr) -> Expr:
    node = BinaryOp(op, left, right)
    if isinstance(left, Constant) and isinstance(right, Constant):
        return _fold(node)
    return node


def _call(function: str, argument: Expr) -> Expr:
    node = Call(function, argument)
    if isinstance(argument, Constant):
        return _fold(node)
    return node


def _fold(node: Expr) -> Expr:
    try:
        value = _evaluate(node, 0.0, {})
    except NonFiniteResult:
        return node
    return Constant(value) if math.isfinite(value) else node


def _byte_offset(source: str, char_offset: int) -> int:
    return len(source[:char_offset].encode("utf-8"))
