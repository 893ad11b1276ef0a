"""Leipnik joint entropy: uncertainty form, closed forms and quadrature oracle."""

from .closed_forms import (
    entropy_minimum_time,
    free_entropy_closed,
    free_entropy_maximally_classical,
    initial_entropy,
    oscillator_entropy_closed,
    oscillator_entropy_max,
)
from .joint import ENTROPY_FLOOR, EntropyRecord, entropy_record, joint_entropy, leipnik_numeric

__all__ = [
    "ENTROPY_FLOOR",
    "EntropyRecord",
    "entropy_minimum_time",
    "entropy_record",
    "free_entropy_closed",
    "free_entropy_maximally_classical",
    "initial_entropy",
    "joint_entropy",
    "leipnik_numeric",
    "oscillator_entropy_closed",
    "oscillator_entropy_max",
]
