"""Position and momentum probability densities of a Gaussian packet on a grid."""

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import trapezoid

from ..core.types import GaussianPacket, PhysicalConstants
from ..errors import ValidationError, ZeroAmplitude

MIN_POINTS = 32
MIN_HALF_WIDTH = 6.0


class DensityKind(str, enum.Enum):
    POSITION = "position"
    MOMENTUM = "momentum"


@dataclass(frozen=True, eq=False)
class DensityGrid:
    """A probability density sampled on a uniform axis."""

    axis: np.ndarray
    density: np.ndarray
    kind: DensityKind

    def __post_init__(self):
        if self.axis.shape != self.density.shape or self.axis.ndim != 1:
            raise ValidationError("density and axis must be 1-D arrays of equal length")
        if np.any(self.density < 0):
            raise ValidationError("density must be nonnegative")

    def normalization(self) -> float:
        return float(trapezoid(self.density, self.axis))

    def mean(self) -> float:
        return float(trapezoid(self.axis * self.density, self.axis))

    def variance(self) -> float:
        centered = self.axis - self.mean()
        return float(trapezoid(centered * centered * self.density, self.axis))


def evaluate_density(
    packet: GaussianPacket,
    m: float,
    consts: Optional[PhysicalConstants] = None,
    kind: DensityKind = DensityKind.POSITION,
    half_width_sigmas: float = 8.0,
    n_points: int = 2001,
) -> DensityGrid:
    """Sample |Psi|^2 in position or momentum space.

    The position density is a normal density centered at x_c with variance
    hbar |u|^2; the prefactor of the packet reduces to it through
    Im(m u du*) = 1/2. The momentum density is centered at p_c with
    variance hbar m^2 |du|^2. The grid spans the center +- half_width_sigmas
    standard deviations.

    Raises:
        ValidationError: If n_points < 32 or half_width_sigmas < 6
        ZeroAmplitude: If the relevant amplitude vanishes
    """
    consts = consts or PhysicalConstants()
    if n_points < MIN_POINTS:
        raise ValidationError(f"n_points must be at least {MIN_POINTS}, got {n_points}")
    if half_width_sigmas < MIN_HALF_WIDTH:
        raise ValidationError(f"half_width_sigmas must be at least {MIN_HALF_WIDTH}, got {half_width_sigmas}")

    kind = DensityKind(kind)
    mode = packet.mode
    if kind is DensityKind.POSITION:
        amplitude, center = abs(mode.u), packet.x_c
        variance = consts.hbar * amplitude ** 2
    else:
        amplitude, center = abs(mode.du), packet.p_c
        variance = consts.hbar * (m * amplitude) ** 2
    if amplitude == 0.0:
        raise ZeroAmplitude(f"cannot build a {kind.value} density from a zero amplitude at t={mode.t}")

    sigma = math.sqrt(variance)
    axis = np.linspace(center - half_width_sigmas * sigma, center + half_width_sigmas * sigma, n_points)
    density = np.exp(-((axis - center) ** 2) / (2.0 * variance)) / math.sqrt(2.0 * math.pi * variance)
    return DensityGrid(axis=axis, density=density, kind=kind)
