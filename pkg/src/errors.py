"""Exception hierarchy for the wave packet entropy toolkit."""

from typing import Optional


class WavePacketError(Exception):
    """Base class for every error raised by this package."""
    pass


class ValidationError(WavePacketError):
    """A value type was constructed with out-of-range fields."""
    pass


class ZeroAmplitude(WavePacketError):
    """A mode amplitude or its derivative vanished where a variance is needed."""
    pass


class ConfigError(WavePacketError):
    """Scenario or settings input is malformed."""
    pass


# Model errors

class ModelError(WavePacketError):
    """A quadratic model is unusable for the requested operation."""
    pass


class OverdampedUnsupported(ModelError):
    """Caldirola-Kanai parameters outside the underdamped branch."""
    pass


class ModelEvaluationError(ModelError):
    """m(t), omega^2(t) or f(t) produced an invalid value."""
    pass


# Numerical errors

class NumericalError(WavePacketError):
    """A numerical check or computation failed."""
    pass


class WronskianDriftExceeded(NumericalError):
    """The Wronskian of an integrated mode drifted past the alarm level."""

    def __init__(self, message: str, t: Optional[float] = None, drift: Optional[float] = None):
        super().__init__(message)
        self.t = t
        self.drift = drift


class WronskianViolation(NumericalError):
    """A mode handed to an identity does not satisfy the Wronskian condition."""
    pass


class UnnormalizedDensity(NumericalError):
    """A density grid does not integrate to one."""
    pass


class DomainError(NumericalError):
    """Arguments outside the domain of a closed-form identity."""
    pass


class FrequencyZero(NumericalError):
    """The upper random-phase bound needs omega(t) > 0."""
    pass


class EntropyBelowFloor(NumericalError):
    """A computed entropy fell below ln(e/2) by more than the tolerance."""
    pass


# Expression errors

class ExpressionError(WavePacketError):
    """Base class for expression parsing and evaluation errors."""
    pass


class ExpressionSyntaxError(ExpressionError):
    """Malformed expression source."""

    def __init__(self, message: str, source: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.source = source
        self.offset = offset


class UnknownIdentifier(ExpressionError):
    """An identifier is neither t, a builtin, a function nor a declared parameter."""
    pass


class UnboundParameter(ExpressionError):
    """A parameter has no value at evaluation time."""
    pass


class NonFiniteResult(ExpressionError, NumericalError):
    """Expression evaluation produced inf or nan."""
    pass


def with_context(error: WavePacketError, **context: float) -> WavePacketError:
    """Return an error of the same class whose message carries grid-point context."""
    where = ", ".join(f"{key}={value!r}" for key, value in context.items())
    cls = type(error)
    augmented = cls.__new__(cls)
    augmented.__dict__.update(error.__dict__)
    augmented.args = (f"{error} [{where}]",)
    augmented.__cause__ = error
    return augmented
