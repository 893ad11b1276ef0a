"""Value types shared by every module: constants, models, modes and packets."""

import cmath
import enum
import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, Optional, Tuple

from ..errors import ModelEvaluationError, OverdampedUnsupported, ValidationError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
MAX_SQUEEZE = 50.0
# relative step of the mass-rate difference quotient
MASS_RATE_STEP = 1e-4

ScalarFunction = Callable[[float], float]


@dataclass(frozen=True)
class PhysicalConstants:
    """Physical constants; only the reduced Planck constant enters the formulas."""

    hbar: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise ValidationError(f"hbar must be a positive finite number, got {self.hbar}")


class ModelKind(str, enum.Enum):
    """Closed-form tag carried by a QuadraticModel."""

    FREE = "free"
    OSCILLATOR = "oscillator"
    CALDIROLA_KANAI = "caldirola_kanai"
    CUSTOM = "custom"


def _constant(value: float, t: float) -> float:
    return value


def _exponential(scale: float, rate: float, t: float) -> float:
    return scale * math.exp(rate * t)


def _zero(t: float) -> float:
    return 0.0


@dataclass(frozen=True)
class QuadraticModel:
    """H(t) = p^2 / 2m(t) + m(t) omega^2(t) x^2 / 2 - f(t) x.

    Named kinds keep their parameters so closed forms can be looked up;
    Custom models carry only the three functions.
    """

    mass: ScalarFunction
    omega_sq: ScalarFunction
    force: ScalarFunction
    kind: ModelKind = ModelKind.CUSTOM
    m0: Optional[float] = None
    omega0: Optional[float] = None
    gamma: Optional[float] = None

    @classmethod
    def free_particle(cls, m0: float, force: Optional[ScalarFunction] = None) -> "QuadraticModel":
        _require_positive("m0", m0)
        return cls(
            mass=partial(_constant, float(m0)),
            omega_sq=partial(_constant, 0.0),
            force=force or _zero,
            kind=ModelKind.FREE,
            m0=float(m0),
        )

    @classmethod
    def oscillator(
        cls, m0: float, omega0: float, force: Optional[ScalarFunction] = None
    ) -> "QuadraticModel":
        _require_positive("m0", m0)
        _require_positive("omega0", omega0)
        return cls(
            mass=partial(_constant, float(m0)),
            omega_sq=partial(_constant, float(omega0) ** 2),
            force=force or _zero,
            kind=ModelKind.OSCILLATOR,
            m0=float(m0),
            omega0=float(omega0),
        )

    @classmethod
    def caldirola_kanai(
        cls,
        m0: float,
        omega0: float,
        gamma: float,
        force: Optional[ScalarFunction] = None,
    ) -> "QuadraticModel":
        """Exponentially growing mass m0 e^(gamma t); underdamped branch only.

        Raises:
            OverdampedUnsupported: If omega0 <= gamma / 2
        """
        _require_positive("m0", m0)
        _require_positive("omega0", omega0)
        if not (math.isfinite(gamma) and gamma >= 0):
            raise ValidationError(f"gamma must be nonnegative, got {gamma}")
        if omega0 <= gamma / 2:
            raise OverdampedUnsupported(
                f"Caldirola-Kanai requires omega0 > gamma/2 (got omega0={omega0}, gamma={gamma}); "
                "only the underdamped branch is supported"
            )
        return cls(
            mass=partial(_exponential, float(m0), float(gamma)),
            omega_sq=partial(_constant, float(omega0) ** 2),
            force=force or _zero,
            kind=ModelKind.CALDIROLA_KANAI,
            m0=float(m0),
            omega0=float(omega0),
            gamma=float(gamma),
        )

    @classmethod
    def custom(
        cls,
        mass: ScalarFunction,
        omega_sq: ScalarFunction,
        force: Optional[ScalarFunction] = None,
    ) -> "QuadraticModel":
        return cls(mass=mass, omega_sq=omega_sq, force=force or _zero)

    @property
    def damped_frequency(self) -> float:
        """Reduced frequency sqrt(omega0^2 - gamma^2/4) of the Caldirola-Kanai kind."""
        if self.kind is not ModelKind.CALDIROLA_KANAI:
            raise ValidationError(f"damped_frequency is defined for Caldirola-Kanai only, not {self.kind.value}")
        return math.sqrt(self.omega0 ** 2 - (self.gamma / 2) ** 2)

    @property
    def characteristic_time(self) -> float:
        if self.kind is ModelKind.FREE:
            return self.m0
        if self.kind is ModelKind.OSCILLATOR:
            return 1.0 / self.omega0
        if self.kind is ModelKind.CALDIROLA_KANAI:
            return 1.0 / self.damped_frequency
        return 1.0

    def evaluate(self, t: float) -> Tuple[float, float, float]:
        """Evaluate (m, omega^2, f) at t.

        Raises:
            ModelEvaluationError: If any value is non-finite or m <= 0
        """
        try:
            m = float(self.mass(t))
            w2 = float(self.omega_sq(t))
            f = float(self.force(t))
        except ModelEvaluationError:
            raise
        except Exception as e:
            raise ModelEvaluationError(f"model evaluation failed at t={t}: {e}") from e
        if not (math.isfinite(m) and math.isfinite(w2) and math.isfinite(f)):
            raise ModelEvaluationError(f"non-finite model value at t={t}: m={m}, omega_sq={w2}, f={f}")
        if m <= 0:
            raise ModelEvaluationError(f"mass must be positive, got m({t})={m}")
        return m, w2, f

    def mass_at(self, t: float) -> float:
        return self.evaluate(t)[0]

    def mass_rate(self, t: float) -> float:
        """dm/dt at t by a second-order difference.

        Central when m is defined on both sides of t, one-sided forward otherwise
        (for masses that only exist from t on).
        """
        h = MASS_RATE_STEP * max(1.0, abs(t))
        try:
            return (self.mass_at(t + h) - self.mass_at(t - h)) / (2.0 * h)
        except ModelEvaluationError:
            logger.debug(f"mass undefined before t={t}; using a forward difference")
        return (-3.0 * self.mass_at(t) + 4.0 * self.mass_at(t + h) - self.mass_at(t + 2.0 * h)) / (2.0 * h)


@dataclass(frozen=True)
class ModeState:
    """Complex mode amplitude u and its time derivative du at time t."""

    t: float
    u: complex
    du: complex

    def __post_init__(self):
        object.__setattr__(self, "u", complex(self.u))
        object.__setattr__(self, "du", complex(self.du))
        if self.u == 0 and self.du == 0:
            raise ValidationError("a mode cannot have both u = 0 and du = 0")
        if not all(math.isfinite(v) for v in (self.t, self.u.real, self.u.imag, self.du.real, self.du.imag)):
            raise ValidationError(f"non-finite mode state at t={self.t}")

    def conjugate(self) -> "ModeState":
        return ModeState(self.t, self.u.conjugate(), self.du.conjugate())

    def with_phase(self, phi: float) -> "ModeState":
        phase = cmath.exp(1j * phi)
        return ModeState(self.t, phase * self.u, phase * self.du)


@dataclass(frozen=True)
class SqueezeParams:
    """Squeeze magnitude r and angle theta; theta is stored reduced to [0, 2 pi)."""

    r: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.r) or self.r < 0:
            raise ValidationError(f"squeeze magnitude r must be >= 0, got {self.r}")
        if self.r > MAX_SQUEEZE:
            raise ValidationError(f"squeeze magnitude r={self.r} exceeds the supported maximum {MAX_SQUEEZE}")
        if not math.isfinite(self.theta):
            raise ValidationError(f"squeeze angle must be finite, got {self.theta}")
        reduced = self.theta % TWO_PI
        if reduced >= TWO_PI:
            reduced = 0.0
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "theta", float(reduced))


@dataclass(frozen=True)
class GaussianPacket:
    """Mode plus centroid (x_c, p_c) and accumulated classical action s_c."""

    mode: ModeState
    x_c: float = 0.0
    p_c: float = 0.0
    s_c: float = 0.0

    @property
    def t(self) -> float:
        return self.mode.t


@dataclass(frozen=True)
class VariancePair:
    """Position and momentum standard deviations."""

    dx: float
    dp: float

    def __post_init__(self):
        if not (self.dx > 0 and self.dp > 0):
            raise ValidationError(f"standard deviations must be positive, got dx={self.dx}, dp={self.dp}")

    def uncertainty_ratio(self, consts: Optional[PhysicalConstants] = None) -> float:
        """2 dx dp / hbar; at least 1 for any valid mode."""
        hbar = consts.hbar if consts is not None else 1.0
        return 2.0 * self.dx * self.dp / hbar


def _require_positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ValidationError(f"{name} must be positive, got {value}")
