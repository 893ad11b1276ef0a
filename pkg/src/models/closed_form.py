"""Closed-form reference modes for the free particle, oscillator and Caldirola-Kanai models."""

import cmath
import math
from dataclasses import dataclass
from functools import partial
from typing import Callable

from ..core.types import ModeState, ModelKind, QuadraticModel
from ..errors import ModelError, OverdampedUnsupported, ValidationError

SQRT2 = math.sqrt(2.0)


def free_mode(m0: float, t: float) -> ModeState:
    """u0(t) = (1 - i t/m0) / sqrt(2), minimum uncertainty at t = 0."""
    _check_positive("m0", m0)
    return ModeState(t=t, u=complex(1.0, -t / m0) / SQRT2, du=complex(0.0, -1.0 / (SQRT2 * m0)))


def oscillator_mode(m0: float, omega0: float, t: float) -> ModeState:
    """u0(t) = e^(-i omega0 t) / sqrt(2 m0 omega0)."""
    _check_positive("m0", m0)
    _check_positive("omega0", omega0)
    u = cmath.exp(-1j * omega0 * t) / math.sqrt(2.0 * m0 * omega0)
    return ModeState(t=t, u=u, du=-1j * omega0 * u)


def caldirola_kanai_mode(m0: float, omega0: float, gamma: float, t: float) -> ModeState:
    """Minimum-uncertainty mode for m(t) = m0 e^(gamma t).

    u0(t) = e^(-gamma t / 2) e^(-i omega t) / sqrt(2 m0 omega) with
    omega = sqrt(omega0^2 - gamma^2 / 4).

    Raises:
        OverdampedUnsupported: If omega0 <= gamma / 2
    """
    _check_positive("m0", m0)
    _check_positive("omega0", omega0)
    if gamma < 0:
        raise ValidationError(f"gamma must be nonnegative, got {gamma}")
    if omega0 <= gamma / 2:
        raise OverdampedUnsupported(
            f"Caldirola-Kanai mode requires omega0 > gamma/2 (got omega0={omega0}, gamma={gamma})"
        )
    omega = math.sqrt(omega0 ** 2 - (gamma / 2) ** 2)
    rate = complex(-gamma / 2, -omega)
    u = cmath.exp(rate * t) / math.sqrt(2.0 * m0 * omega)
    return ModeState(t=t, u=u, du=rate * u)


def minimum_uncertainty_mode(m: float, omega: float, t: float, damping: float = 0.0) -> ModeState:
    """Mode with u = 1/sqrt(2 m omega), du = -(damping + i omega) u at time t.

    Used as the starting reference for models without a closed form. With
    damping = m'/2m and omega the reduced frequency sqrt(omega^2 - damping^2)
    it is the Caldirola-Kanai mode at t up to a global phase.
    """
    _check_positive("m", m)
    _check_positive("omega", omega)
    if not math.isfinite(damping):
        raise ValidationError(f"damping must be finite, got {damping}")
    u = complex(1.0 / math.sqrt(2.0 * m * omega))
    return ModeState(t=t, u=u, du=complex(-damping, -omega) * u)


@dataclass(frozen=True)
class ClosedFormMode:
    """A named model paired with its analytic reference mode."""

    model: QuadraticModel
    evaluator: Callable[[float], ModeState]

    def __call__(self, t: float) -> ModeState:
        return self.evaluator(t)


def closed_form_for(model: QuadraticModel) -> ClosedFormMode:
    """Look up the analytic reference mode of a named model.

    Raises:
        ModelError: If the model is Custom
    """
    if model.kind is ModelKind.FREE:
        evaluator = partial(free_mode, model.m0)
    elif model.kind is ModelKind.OSCILLATOR:
        evaluator = partial(oscillator_mode, model.m0, model.omega0)
    elif model.kind is ModelKind.CALDIROLA_KANAI:
        evaluator = partial(caldirola_kanai_mode, model.m0, model.omega0, model.gamma)
    else:
        raise ModelError("custom models have no closed-form reference mode")
    return ClosedFormMode(model=model, evaluator=evaluator)


def _check_positive(name: str, value: float) -> None:
    if not value > 0:
        raise ValidationError(f"{name} must be positive, got {value}")
