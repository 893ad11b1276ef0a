"""Operations on mode states: Wronskian, variances and squeezing."""

import cmath
import logging
import math
from typing import Optional, Tuple

from ..errors import ZeroAmplitude
from .types import ModeState, PhysicalConstants, SqueezeParams, VariancePair

logger = logging.getLogger(__name__)

DEFAULT_CONSTANTS = PhysicalConstants()


def wronskian(mode: ModeState, m: float) -> complex:
    """Return m (u du* - du u*), which equals i for a normalized mode.

    Args:
        mode: Mode state to check
        m: Mass at the mode's time

    Returns:
        The Wronskian as a complex number
    """
    return m * (mode.u * mode.du.conjugate() - mode.du * mode.u.conjugate())


def wronskian_drift(mode: ModeState, m: float) -> float:
    """Distance of the Wronskian from i."""
    return abs(wronskian(mode, m) - 1j)


def variances(
    mode: ModeState, m: float, consts: Optional[PhysicalConstants] = None
) -> VariancePair:
    """Position and momentum standard deviations of the packet built on a mode.

    Args:
        mode: Mode state
        m: Mass at the mode's time
        consts: Physical constants (hbar = 1 when omitted)

    Returns:
        VariancePair with dx = sqrt(hbar |u|^2) and dp = m sqrt(hbar |du|^2)

    Raises:
        ZeroAmplitude: If u or du vanishes
    """
    consts = consts or DEFAULT_CONSTANTS
    abs_u = abs(mode.u)
    abs_du = abs(mode.du)
    if abs_u == 0.0 or abs_du == 0.0:
        raise ZeroAmplitude(f"zero amplitude at t={mode.t}: |u|={abs_u}, |du|={abs_du}")
    root_hbar = math.sqrt(consts.hbar)
    return VariancePair(dx=root_hbar * abs_u, dp=m * root_hbar * abs_du)


def bogoliubov_coeffs(sq: SqueezeParams) -> Tuple[complex, complex]:
    """Coefficients (alpha, beta) = (cosh r, e^(i theta) sinh r), |alpha|^2 - |beta|^2 = 1."""
    alpha = complex(math.cosh(sq.r))
    beta = cmath.exp(1j * sq.theta) * math.sinh(sq.r)
    return alpha, beta


def squeeze_mode(ref_mode: ModeState, sq: SqueezeParams) -> ModeState:
    """Superpose a reference mode with its conjugate.

    u = cosh(r) u0 + e^(-i theta) sinh(r) u0*, and the same for du; the
    Wronskian is preserved because cosh^2 r - sinh^2 r = 1.
    """
    if sq.r == 0.0:
        return ref_mode
    alpha, beta = bogoliubov_coeffs(sq)
    beta_bar = beta.conjugate()
    return ModeState(
        t=ref_mode.t,
        u=alpha * ref_mode.u + beta_bar * ref_mode.u.conjugate(),
        du=alpha * ref_mode.du + beta_bar * ref_mode.du.conjugate(),
    )


def is_maximally_classical(sq: SqueezeParams, atol: float = 1e-12) -> bool:
    """True when the squeezed free packet starts at minimum uncertainty: r = 0 or theta in {0, pi}."""
    if sq.r <= atol:
        return True
    return any(abs(sq.theta - anchor) <= atol for anchor in (0.0, math.pi, 2.0 * math.pi))
