"""Core value types and mode operations."""

from .modes import (
    bogoliubov_coeffs,
    is_maximally_classical,
    squeeze_mode,
    variances,
    wronskian,
    wronskian_drift,
)
from .types import (
    GaussianPacket,
    ModeState,
    ModelKind,
    PhysicalConstants,
    QuadraticModel,
    SqueezeParams,
    VariancePair,
)

__all__ = [
    "GaussianPacket",
    "ModeState",
    "ModelKind",
    "PhysicalConstants",
    "QuadraticModel",
    "SqueezeParams",
    "VariancePair",
    "bogoliubov_coeffs",
    "is_maximally_classical",
    "squeeze_mode",
    "variances",
    "wronskian",
    "wronskian_drift",
]
