"""Mode, centroid and density propagation."""

from .density import DensityGrid, DensityKind, evaluate_density
from .integrator import (
    IntegratorConfig,
    Trajectory,
    as_time_grid,
    integrate_centroid,
    integrate_mode,
    propagate_packet,
)

__all__ = [
    "DensityGrid",
    "DensityKind",
    "IntegratorConfig",
    "Trajectory",
    "as_time_grid",
    "evaluate_density",
    "integrate_centroid",
    "integrate_mode",
    "propagate_packet",
]
