"""Turn expression sources into model functions."""

import logging
from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

from ..core.types import QuadraticModel
from ..errors import UnknownIdentifier
from .parser import BUILTIN_CONSTANTS, Expr, evaluate, free_identifiers, parse, to_source

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExpressionFunction:
    """A parsed expression with its parameters bound, callable as f(t)."""

    expr: Expr
    params: Tuple[Tuple[str, float], ...] = ()

    @classmethod
    def from_source(cls, source: str, params: Optional[Mapping[str, float]] = None) -> "ExpressionFunction":
        """Parse source and bind params.

        Raises:
            ExpressionSyntaxError: If the source is malformed
            UnknownIdentifier: If a name is neither t, a builtin nor in params
        """
        bound = {name: float(value) for name, value in (params or {}).items()}
        expr = parse(source, known_parameters=frozenset(bound))
        missing = free_identifiers(expr) - set(bound) - set(BUILTIN_CONSTANTS)
        if missing:
            raise UnknownIdentifier(f"unbound identifiers in {source!r}: {sorted(missing)}")
        return cls(expr=expr, params=tuple(sorted(bound.items())))

    def __call__(self, t: float) -> float:
        return evaluate(self.expr, t, dict(self.params))

    def __str__(self) -> str:
        return to_source(self.expr)


def build_model(
    mass: str,
    omega_sq: str,
    force: str = "0",
    params: Optional[Mapping[str, float]] = None,
) -> QuadraticModel:
    """Build a Custom QuadraticModel from three expression sources.

    Args:
        mass: Source of m(t)
        omega_sq: Source of omega^2(t); negative values model inverted oscillators
        force: Source of f(t)
        params: Values of the named parameters used by the sources

    Returns:
        QuadraticModel of kind Custom
    """
    model = QuadraticModel.custom(
        mass=ExpressionFunction.from_source(mass, params),
        omega_sq=ExpressionFunction.from_source(omega_sq, params),
        force=ExpressionFunction.from_source(force, params),
    )
    logger.debug(f"built custom model m(t)={mass!r}, omega_sq(t)={omega_sq!r}, f(t)={force!r}")
    return model


def evaluate_constant(source: str, params: Optional[Mapping[str, float]] = None) -> float:
    """Evaluate a t-free expression such as "3*pi/2".

    Raises:
        UnknownIdentifier: If the source mentions t or an unbound name
    """
    bound = {name: float(value) for name, value in (params or {}).items()}
    return evaluate(parse(source, known_parameters=frozenset(bound), allow_time=False), 0.0, bound)
