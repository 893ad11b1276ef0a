"""Random-phase entropy and its bounds."""

from .phase_average import (
    MonotonicityReport,
    PhaseBounds,
    RandomPhaseRecord,
    caldirola_kanai_random_phase,
    energy_expectation,
    free_random_phase,
    free_random_phase_printed,
    log_integral_identity,
    minimal_uncertainty_identity,
    oscillator_random_phase,
    printed_bounds,
    random_phase_bounds,
    random_phase_closed,
    random_phase_monotonicity,
    random_phase_quadrature,
    random_phase_record,
    squeeze_log_factor,
    squeezed_entropy,
)

__all__ = [
    "MonotonicityReport",
    "PhaseBounds",
    "RandomPhaseRecord",
    "caldirola_kanai_random_phase",
    "energy_expectation",
    "free_random_phase",
    "free_random_phase_printed",
    "log_integral_identity",
    "minimal_uncertainty_identity",
    "oscillator_random_phase",
    "printed_bounds",
    "random_phase_bounds",
    "random_phase_closed",
    "random_phase_monotonicity",
    "random_phase_quadrature",
    "random_phase_record",
    "squeeze_log_factor",
    "squeezed_entropy",
]
