"""Random-phase entropy: the joint entropy averaged over a uniform squeeze angle.

For a reference mode u0 and squeeze magnitude r the average has the closed form

    S_bar = ln(e/2) + ln((cosh 2r + 1)/2) + ln(2 m |u0 du0|)

obtained from the log-integral identity. The reference mode is force-free, so
S_bar does not depend on f(t).
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.modes import squeeze_mode, variances
from ..core.types import ModeState, PhysicalConstants, QuadraticModel, SqueezeParams, TWO_PI
from ..dynamics.integrator import IntegratorConfig, as_time_grid, integrate_mode
from ..entropy.joint import ENTROPY_FLOOR, joint_entropy
from ..errors import DomainError, FrequencyZero, ValidationError, WronskianViolation, ZeroAmplitude

logger = logging.getLogger(__name__)

WRONSKIAN_TOLERANCE = 1e-8
MIN_QUADRATURE_NODES = 64
BOUND_TOLERANCE = 1e-10


def squeeze_log_factor(r: float) -> float:
    """ln((cosh 2r + 1)/2) = 2 ln cosh r."""
    if r < 0:
        raise ValidationError(f"r must be nonnegative, got {r}")
    return 2.0 * math.log(math.cosh(r))


def _product_ratio(ref_mode: ModeState, m: float) -> float:
    """2 m |u0 du0|, equal to 2 dx dp / hbar of the reference packet."""
    value = 2.0 * m * abs(ref_mode.u) * abs(ref_mode.du)
    if value == 0.0:
        raise ZeroAmplitude(f"reference mode has a zero amplitude at t={ref_mode.t}")
    return value


def random_phase_closed(r: float, ref_mode: ModeState, m: float) -> float:
    """Closed-form random-phase entropy of the packets squeezed from ref_mode.

    Raises:
        ZeroAmplitude: If u0 or du0 vanishes
    """
    return ENTROPY_FLOOR + squeeze_log_factor(r) + math.log(_product_ratio(ref_mode, m))


def random_phase_quadrature(r: float, ref_mode: ModeState, m: float, n: int = 512) -> float:
    """Average of the joint entropy over theta by the periodic trapezoid rule.

    The integrand is smooth and 2 pi-periodic, so n equally spaced nodes on
    [0, 2 pi) converge spectrally.

    Raises:
        ValidationError: If n < 64 or n is odd
    """
    if n < MIN_QUADRATURE_NODES or n % 2:
        raise ValidationError(f"quadrature needs an even node count >= {MIN_QUADRATURE_NODES}, got {n}")
    if r == 0.0:
        return joint_entropy(variances(ref_mode, m))
    # Closed-form squeeze applied to all nodes at once; matches squeeze_mode node by node.
    thetas = np.arange(n) * (TWO_PI / n)
    weight = np.exp(1j * thetas) * math.sinh(r)
    cosh_r = math.cosh(r)
    u = cosh_r * ref_mode.u + np.conj(weight) * np.conj(ref_mode.u)
    du = cosh_r * ref_mode.du + np.conj(weight) * np.conj(ref_mode.du)
    ratio = 2.0 * m * np.abs(u) * np.abs(du)
    return float(ENTROPY_FLOOR + np.mean(np.log(ratio)))


def log_integral_identity(a: float, b: float, c: float) -> float:
    """int_0^{2 pi} ln(a + b cos x + c sin x) dx = 2 pi ln((a + sqrt(a^2 - b^2 - c^2)) / 2).

    Raises:
        DomainError: If a <= sqrt(b^2 + c^2)
    """
    radius = math.hypot(b, c)
    if not a > radius:
        raise DomainError(f"log integral needs a > sqrt(b^2 + c^2); got a={a}, sqrt(b^2+c^2)={radius}")
    return TWO_PI * math.log((a + math.sqrt((a - radius) * (a + radius))) / 2.0)


def minimal_uncertainty_identity(
    ref_mode: ModeState, m: float, m_dudt_of_abs_u_sq: Optional[float] = None
) -> float:
    """Right-hand side of ln(2 m |u0 du0|) = 1/2 ln(1 + (m d|u0|^2/dt)^2).

    Args:
        ref_mode: Wronskian-normalized reference mode
        m: Mass at the mode's time
        m_dudt_of_abs_u_sq: m d|u0|^2/dt when known from elsewhere (for example
            finite differences); defaults to 2 m Re(u0 du0*)

    Raises:
        WronskianViolation: If 2 m Im(u0* du0) differs from -1 beyond tolerance
    """
    imaginary = 2.0 * m * (ref_mode.u.conjugate() * ref_mode.du).imag
    if abs(imaginary + 1.0) > WRONSKIAN_TOLERANCE:
        raise WronskianViolation(
            f"2 m Im(u0* du0) = {imaginary!r} at t={ref_mode.t}; a normalized mode gives -1"
        )
    if m_dudt_of_abs_u_sq is None:
        m_dudt_of_abs_u_sq = 2.0 * m * (ref_mode.u * ref_mode.du.conjugate()).real
    return 0.5 * math.log1p(m_dudt_of_abs_u_sq ** 2)


def energy_expectation(
    ref_mode: ModeState,
    model: QuadraticModel,
    t: float,
    consts: Optional[PhysicalConstants] = None,
) -> float:
    """<H> of the centroid-free packet: (hbar m / 2)(|du0|^2 + omega^2 |u0|^2)."""
    consts = consts or PhysicalConstants()
    m, w2, _ = model.evaluate(t)
    return 0.5 * consts.hbar * m * (abs(ref_mode.du) ** 2 + w2 * abs(ref_mode.u) ** 2)


@dataclass(frozen=True)
class PhaseBounds:
    """Lower and upper bounds on the random-phase entropy.

    lower/upper are the forms that follow from the closed form; the printed_*
    fields carry the alternative forms without the /2 inside the logarithm
    and with a 1/2 on the energy logarithm, compared against the closed form.
    """

    lower: float
    upper: float
    printed_lower: float
    printed_upper: float
    s_bar: float

    @property
    def holds(self) -> bool:
        return self.lower <= self.s_bar + BOUND_TOLERANCE and self.s_bar <= self.upper + BOUND_TOLERANCE

    @property
    def printed_lower_holds(self) -> bool:
        return self.printed_lower <= self.s_bar + BOUND_TOLERANCE

    @property
    def printed_upper_holds(self) -> bool:
        return self.s_bar <= self.printed_upper + BOUND_TOLERANCE


def _energy_ratio(ref_mode: ModeState, model: QuadraticModel, t: float, consts: PhysicalConstants) -> float:
    w2 = model.evaluate(t)[1]
    if w2 <= 0.0:
        raise FrequencyZero(f"the upper bound needs omega(t) > 0; omega^2({t}) = {w2}")
    omega = math.sqrt(w2)
    return energy_expectation(ref_mode, model, t, consts) / (0.5 * consts.hbar * omega)


def printed_bounds(
    r: float,
    ref_mode: ModeState,
    model: QuadraticModel,
    t: float,
    consts: Optional[PhysicalConstants] = None,
) -> Tuple[float, float]:
    """The alternative bound forms: ln(e/2) + ln(cosh 2r + 1) [+ 1/2 ln(<H>/(hbar omega/2))]."""
    consts = consts or PhysicalConstants()
    base = ENTROPY_FLOOR + math.log(math.cosh(2.0 * r) + 1.0)
    return base, base + 0.5 * math.log(_energy_ratio(ref_mode, model, t, consts))


def random_phase_bounds(
    r: float,
    ref_mode: ModeState,
    model: QuadraticModel,
    t: float,
    consts: Optional[PhysicalConstants] = None,
) -> PhaseBounds:
    """Lower and upper bounds on S_bar at time t.

    lower = ln(e/2) + ln((cosh 2r + 1)/2), from ln(2 m |u0 du0|) >= 0;
    upper = lower + ln(<H>/(hbar omega/2)), from 2 m |u0 du0| <= <H>/(hbar omega/2).

    Raises:
        FrequencyZero: If omega^2(t) <= 0, where the upper bound is unavailable
    """
    consts = consts or PhysicalConstants()
    m = model.mass_at(t)
    lower = ENTROPY_FLOOR + squeeze_log_factor(r)
    upper = lower + math.log(_energy_ratio(ref_mode, model, t, consts))
    printed_lower, printed_upper = printed_bounds(r, ref_mode, model, t, consts)
    bounds = PhaseBounds(
        lower=lower,
        upper=upper,
        printed_lower=printed_lower,
        printed_upper=printed_upper,
        s_bar=random_phase_closed(r, ref_mode, m),
    )
    if not bounds.printed_lower_holds:
        logger.debug(
            f"printed lower bound {printed_lower:.12g} exceeds S_bar {bounds.s_bar:.12g} at t={t}, r={r}"
        )
    return bounds


@dataclass(frozen=True)
class RandomPhaseRecord:
    """Random-phase entropy at one time with its oracle, bounds and energy."""

    t: float
    s_bar_closed: float
    s_bar_quadrature: float
    lower_bound: float
    upper_bound: float
    energy_expectation: float


def random_phase_record(
    r: float,
    ref_mode: ModeState,
    model: QuadraticModel,
    consts: Optional[PhysicalConstants] = None,
    n: int = 512,
) -> RandomPhaseRecord:
    """Collect closed form, quadrature, bounds and <H> (in units of hbar omega) for ref_mode."""
    consts = consts or PhysicalConstants()
    t = ref_mode.t
    m = model.mass_at(t)
    bounds = random_phase_bounds(r, ref_mode, model, t, consts)
    omega = math.sqrt(model.evaluate(t)[1])
    return RandomPhaseRecord(
        t=t,
        s_bar_closed=bounds.s_bar,
        s_bar_quadrature=random_phase_quadrature(r, ref_mode, m, n),
        lower_bound=bounds.lower,
        upper_bound=bounds.upper,
        energy_expectation=energy_expectation(ref_mode, model, t, consts) / (consts.hbar * omega),
    )


# Special cases

def free_random_phase(r: float, T: float) -> float:
    """Free particle: ln(e/2) + ln((cosh 2r + 1)/2) + 1/2 ln(1 + T^2)."""
    return ENTROPY_FLOOR + squeeze_log_factor(r) + 0.5 * math.log1p(T * T)


def free_random_phase_printed(r: float, T: float) -> float:
    """The free-particle form with ln(1 + T^2) in place of 1/2 ln(1 + T^2)."""
    return ENTROPY_FLOOR + squeeze_log_factor(r) + math.log1p(T * T)


def oscillator_random_phase(r: float) -> float:
    """Harmonic oscillator: time independent, ln(e/2) + ln((cosh 2r + 1)/2)."""
    return ENTROPY_FLOOR + squeeze_log_factor(r)


def caldirola_kanai_random_phase(r: float, gamma: float, omega0: float) -> float:
    """Caldirola-Kanai: the oscillator value plus 1/2 ln(1 + gamma^2 / 4 omega^2)."""
    omega_sq = omega0 ** 2 - (gamma / 2) ** 2
    if omega_sq <= 0:
        raise DomainError(f"Caldirola-Kanai needs omega0 > gamma/2, got omega0={omega0}, gamma={gamma}")
    return oscillator_random_phase(r) + 0.5 * math.log1p(gamma * gamma / (4.0 * omega_sq))


# Monotonicity probe

@dataclass(frozen=True)
class MonotonicityReport:
    """Random-phase entropy along a time grid and where it decreases."""

    r: float
    times: Tuple[float, ...]
    s_bar: Tuple[float, ...]
    min_forward_difference: float
    decreasing_times: Tuple[float, ...]

    @property
    def nondecreasing(self) -> bool:
        return not self.decreasing_times


def random_phase_monotonicity(
    model: QuadraticModel,
    ref_init: ModeState,
    r: float,
    t_grid: Sequence[float],
    cfg: IntegratorConfig = IntegratorConfig(),
    tolerance: float = 1e-10,
) -> MonotonicityReport:
    """Probe whether S_bar is nondecreasing on a grid for an arbitrary model.

    Reports the smallest forward difference and the grid times after which
    S_bar drops by more than tolerance. It is evidence on one grid, not a proof.
    """
    grid = as_time_grid(t_grid)
    modes = integrate_mode(model, ref_init, grid, cfg.for_entropy())
    values: List[float] = [random_phase_closed(r, mode, model.mass_at(mode.t)) for mode in modes]
    differences = np.diff(values) if len(values) > 1 else np.zeros(0)
    decreasing = tuple(float(grid[i]) for i in np.flatnonzero(differences < -tolerance))
    min_difference = float(differences.min()) if differences.size else 0.0
    if decreasing:
        logger.info(f"S_bar decreases at {len(decreasing)} grid points for r={r}")
    return MonotonicityReport(
        r=r,
        times=tuple(float(t) for t in grid),
        s_bar=tuple(values),
        min_forward_difference=min_difference,
        decreasing_times=decreasing,
    )


def squeezed_entropy(ref_mode: ModeState, m: float, sq: SqueezeParams, consts: Optional[PhysicalConstants] = None) -> float:
    """Joint entropy of the packet squeezed from ref_mode by sq."""
    return joint_entropy(variances(squeeze_mode(ref_mode, sq), m, consts), consts)
