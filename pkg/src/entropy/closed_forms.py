"""Closed-form joint entropies of squeezed free-particle and oscillator packets.

T denotes the dimensionless free-particle time t/m0.
"""

import math
from typing import Optional

from ..core.types import SqueezeParams
from ..errors import ValidationError
from .joint import ENTROPY_FLOOR


def free_entropy_closed(sq: SqueezeParams, T: float) -> float:
    """Joint entropy of the squeezed free packet at dimensionless time T."""
    half = 0.5 * sq.theta
    c, s = math.cos(half), math.sin(half)
    initial = c * c + math.exp(4.0 * sq.r) * s * s
    spread = (c + T * s) ** 2 + math.exp(-4.0 * sq.r) * (s - T * c) ** 2
    return ENTROPY_FLOOR + 0.5 * math.log(initial) + 0.5 * math.log(spread)


def initial_entropy(sq: SqueezeParams) -> float:
    """S(0) = ln(e/2) + 1/2 ln(1 + sin^2(theta) sinh^2(2r))."""
    return ENTROPY_FLOOR + 0.5 * math.log1p((math.sin(sq.theta) * math.sinh(2.0 * sq.r)) ** 2)


def entropy_minimum_time(sq: SqueezeParams, m0: float) -> Optional[float]:
    """Time t* > 0 at which the free-particle entropy touches ln(e/2).

    Only squeeze angles in (pi, 2 pi) with r > 0 have such a time; for the
    others the entropy is nondecreasing on t >= 0 and None is returned.
    The stationarity condition of the closed form gives

        t* = -m0 (1 - e^(-4r)) sin(theta) / (2 (sin^2(theta/2) + e^(-4r) cos^2(theta/2)))
    """
    if m0 <= 0:
        raise ValidationError(f"m0 must be positive, got {m0}")
    if sq.r == 0.0 or not (math.pi < sq.theta < 2.0 * math.pi):
        return None
    k = math.exp(-4.0 * sq.r)
    half = 0.5 * sq.theta
    denominator = 2.0 * (math.sin(half) ** 2 + k * math.cos(half) ** 2)
    t_star = m0 * math.expm1(-4.0 * sq.r) * math.sin(sq.theta) / denominator
    return t_star if t_star > 0 else None


def free_entropy_maximally_classical(r: float, theta: float, T: float) -> float:
    """Monotone entropy of an initially minimum-uncertainty free packet.

    ln(e/2) + 1/2 ln(1 + e^(+-4r) T^2), with the upper sign for theta = pi and
    the lower for theta = 0; r = 0 gives ln(e/2) + 1/2 ln(1 + T^2) for any theta.
    """
    if r < 0:
        raise ValidationError(f"r must be nonnegative, got {r}")
    if r == 0.0:
        return ENTROPY_FLOOR + 0.5 * math.log1p(T * T)
    reduced = SqueezeParams(r=r, theta=theta).theta
    if reduced == 0.0:
        sign = -1.0
    elif reduced == math.pi:
        sign = 1.0
    else:
        raise ValidationError(f"theta must be 0 or pi for a maximally classical packet, got {theta}")
    return ENTROPY_FLOOR + 0.5 * math.log1p(math.exp(sign * 4.0 * r) * T * T)


def oscillator_entropy_closed(sq: SqueezeParams, omega0: float, t: float) -> float:
    """S(t) = ln(e/2) + 1/2 ln(1 + sinh^2(2r) sin^2(2 omega0 t - theta)); period pi/omega0."""
    if omega0 <= 0:
        raise ValidationError(f"omega0 must be positive, got {omega0}")
    amplitude = math.sinh(2.0 * sq.r) * math.sin(2.0 * omega0 * t - sq.theta)
    return ENTROPY_FLOOR + 0.5 * math.log1p(amplitude * amplitude)


def oscillator_entropy_max(r: float) -> float:
    """Maximum over time of the oscillator entropy."""
    if r < 0:
        raise ValidationError(f"r must be nonnegative, got {r}")
    return ENTROPY_FLOOR + 0.5 * math.log1p(math.sinh(2.0 * r) ** 2)
