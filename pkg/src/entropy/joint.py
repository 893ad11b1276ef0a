"""Leipnik joint entropy from the uncertainty product and from density quadrature."""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from scipy.integrate import trapezoid
from scipy.special import entr

from ..core.types import PhysicalConstants, VariancePair
from ..dynamics.density import DensityGrid, DensityKind
from ..errors import EntropyBelowFloor, UnnormalizedDensity, ValidationError

logger = logging.getLogger(__name__)

# ln(e/2), the entropy of a minimum-uncertainty packet
ENTROPY_FLOOR = 1.0 - math.log(2.0)

NORMALIZATION_TOLERANCE = 1e-8
FLOOR_TOLERANCE = 1e-10


@dataclass(frozen=True)
class EntropyRecord:
    """One scan row: time, standard deviations, entropy and optional random-phase entropy."""

    t: float
    dx: float
    dp: float
    s: float
    s_bar: Optional[float] = None
    s_floor: float = ENTROPY_FLOOR

    def __post_init__(self):
        if self.s < self.s_floor - FLOOR_TOLERANCE:
            raise EntropyBelowFloor(
                f"entropy {self.s!r} at t={self.t} is below ln(e/2) by {self.s_floor - self.s:.3e}"
            )

    @property
    def s_minus_floor(self) -> float:
        return self.s - self.s_floor


def joint_entropy(v: VariancePair, consts: Optional[PhysicalConstants] = None) -> float:
    """S = ln(e/2) + ln(2 dx dp / hbar), in nats."""
    hbar = consts.hbar if consts is not None else 1.0
    return ENTROPY_FLOOR + math.log(2.0 * v.dx * v.dp / hbar)


def entropy_record(t: float, v: VariancePair, consts: Optional[PhysicalConstants] = None) -> EntropyRecord:
    return EntropyRecord(t=t, dx=v.dx, dp=v.dp, s=joint_entropy(v, consts))


def leipnik_numeric(pos: DensityGrid, mom: DensityGrid, consts: Optional[PhysicalConstants] = None) -> float:
    """Joint entropy by trapezoid quadrature of -rho ln rho in both spaces.

    Args:
        pos: Position density grid
        mom: Momentum density grid
        consts: Physical constants

    Returns:
        -int rho_x ln rho_x dx - int rho_p ln rho_p dp - ln(2 pi hbar)

    Raises:
        UnnormalizedDensity: If either grid integrates away from 1 by more than 1e-8
    """
    consts = consts or PhysicalConstants()
    if pos.kind is not DensityKind.POSITION or mom.kind is not DensityKind.MOMENTUM:
        raise ValidationError("leipnik_numeric expects a position grid and a momentum grid")
    total = 0.0
    for grid in (pos, mom):
        norm = grid.normalization()
        if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
            raise UnnormalizedDensity(f"{grid.kind.value} density integrates to {norm!r}")
        # entr(x) = -x ln x with entr(0) = 0
        total += float(trapezoid(entr(grid.density), grid.axis))
    return total - math.log(2.0 * math.pi * consts.hbar)
