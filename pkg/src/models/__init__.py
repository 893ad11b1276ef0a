"""Analytic reference modes for the named quadratic models."""

from .closed_form import (
    ClosedFormMode,
    caldirola_kanai_mode,
    closed_form_for,
    free_mode,
    minimum_uncertainty_mode,
    oscillator_mode,
)

__all__ = [
    "ClosedFormMode",
    "caldirola_kanai_mode",
    "closed_form_for",
    "free_mode",
    "minimum_uncertainty_mode",
    "oscillator_mode",
]
