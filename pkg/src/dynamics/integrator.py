"""Numerical propagation of the mode, the centroid and the classical action.

The mode equation u'' + (m'/m) u' + omega^2 u = 0 is integrated in the
canonical pair (u, pi = m u'), i.e. u' = pi/m, pi' = -m omega^2 u, so m(t) is
never differentiated and the Wronskian u pi* - pi u* is a bilinear form of the
state. The centroid uses the same pair (x_c, p_c) with the force added to p'.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Literal, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.integrate import solve_ivp

from ..core.modes import wronskian_drift
from ..core.types import GaussianPacket, ModeState, QuadraticModel
from ..errors import NumericalError, ValidationError, WronskianDriftExceeded

logger = logging.getLogger(__name__)

# step control for integrations whose output becomes an entropy
ENTROPY_REL_TOL = 1e-12
ENTROPY_ABS_TOL = 1e-14


class IntegratorConfig(BaseModel):
    """Step control and health-check settings for the adaptive integrator."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    rel_tol: float = Field(default=1e-10, gt=0)
    abs_tol: float = Field(default=1e-12, gt=0)
    max_step: float = Field(default=math.inf, gt=0)
    wronskian_alarm: float = Field(default=1e-8, gt=0)
    method: Literal["RK45", "DOP853"] = "RK45"

    def for_entropy(self) -> "IntegratorConfig":
        """These settings with the step control tightened to the entropy ceilings.

        S - ln(e/2) = ln(2 m |u du|) >= ln|W|, so a Wronskian drift eps can put
        S up to eps below the floor.
        """
        return self.model_copy(update={
            "rel_tol": min(self.rel_tol, ENTROPY_REL_TOL),
            "abs_tol": min(self.abs_tol, ENTROPY_ABS_TOL),
        })


CentroidPoint = Tuple[float, float, float]


@dataclass(frozen=True)
class Trajectory:
    """Mode, centroid and action sampled on a common time grid."""

    times: Tuple[float, ...]
    modes: Tuple[ModeState, ...]
    centroids: Tuple[Tuple[float, float], ...]
    actions: Tuple[float, ...]

    def __post_init__(self):
        n = len(self.times)
        if not (len(self.modes) == len(self.centroids) == len(self.actions) == n):
            raise ValidationError("trajectory lists must have equal length")
        if any(b <= a for a, b in zip(self.times, self.times[1:])):
            raise ValidationError("trajectory times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    def packet(self, index: int) -> GaussianPacket:
        x_c, p_c = self.centroids[index]
        return GaussianPacket(mode=self.modes[index], x_c=x_c, p_c=p_c, s_c=self.actions[index])

    def max_wronskian_drift(self, model: QuadraticModel) -> float:
        return max(wronskian_drift(mode, model.mass_at(mode.t)) for mode in self.modes)


def as_time_grid(t_grid: Sequence[float]) -> np.ndarray:
    """Validate and convert a time grid to a float array.

    Raises:
        ValidationError: If the grid is empty, non-finite or not strictly increasing
    """
    grid = np.asarray(t_grid, dtype=float).reshape(-1)
    if grid.size == 0:
        raise ValidationError("time grid is empty")
    if not np.all(np.isfinite(grid)):
        raise ValidationError("time grid contains non-finite values")
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise ValidationError("time grid must be strictly increasing")
    return grid


def integrate_mode(
    model: QuadraticModel,
    init: ModeState,
    t_grid: Sequence[float],
    cfg: IntegratorConfig = IntegratorConfig(),
) -> List[ModeState]:
    """Integrate the mode equation from init to every time on the grid.

    Args:
        model: Quadratic model supplying m(t) and omega^2(t)
        init: Starting mode; its time must not exceed the first grid time
        t_grid: Strictly increasing output times
        cfg: Integrator settings

    Returns:
        One ModeState per grid time

    Raises:
        WronskianDriftExceeded: If init or any output violates the Wronskian beyond cfg.wronskian_alarm
        ModelEvaluationError: If the model cannot be evaluated on the span
    """
    grid = as_time_grid(t_grid)
    if grid[0] < init.t:
        raise ValidationError(f"time grid starts at {grid[0]}, before the initial mode time {init.t}")

    m_init = model.mass_at(init.t)
    drift = wronskian_drift(init, m_init)
    if drift > cfg.wronskian_alarm:
        raise WronskianDriftExceeded(
            f"initial mode violates the Wronskian condition: |W - i| = {drift:.3e} "
            f"exceeds alarm {cfg.wronskian_alarm:.1e}",
            t=init.t,
            drift=drift,
        )

    if grid[-1] == init.t:
        return [init]

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        m, w2, _ = model.evaluate(t)
        return np.array([y[1] / m, -m * w2 * y[0]], dtype=complex)

    y0 = np.array([init.u, m_init * init.du], dtype=complex)
    solution = solve_ivp(
        rhs,
        (init.t, float(grid[-1])),
        y0,
        method=cfg.method,
        t_eval=grid,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
    )
    if not solution.success:
        raise NumericalError(f"mode integration failed: {solution.message}")
    logger.debug(f"mode integration: {solution.nfev} evaluations over [{init.t}, {grid[-1]}]")

    modes: List[ModeState] = []
    for t, (u, canonical) in zip(grid, solution.y.T):
        t = float(t)
        if t == init.t:
            modes.append(init)
            continue
        m = model.mass_at(t)
        mode = ModeState(t=t, u=complex(u), du=complex(canonical) / m)
        drift = wronskian_drift(mode, m)
        if drift > cfg.wronskian_alarm:
            logger.error(f"Wronskian drift {drift:.3e} at t={t}")
            raise WronskianDriftExceeded(
                f"Wronskian drift {drift:.3e} at t={t} exceeds alarm {cfg.wronskian_alarm:.1e}; "
                "tighten the step control",
                t=t,
                drift=drift,
            )
        modes.append(mode)
    return modes


def integrate_centroid(
    model: QuadraticModel,
    x0: float,
    p0: float,
    t_grid: Sequence[float],
    cfg: IntegratorConfig = IntegratorConfig(),
) -> List[CentroidPoint]:
    """Integrate the driven classical trajectory and its action.

    Solves x'' + (m'/m) x' + omega^2 x = f with p = m x', accumulating
    s' = p^2/2m - m omega^2 x^2/2 + f x from s = 0 at the first grid time.

    Returns:
        One (x_c, p_c, s_c) triple per grid time
    """
    grid = as_time_grid(t_grid)
    model.evaluate(float(grid[0]))
    if grid.size == 1:
        return [(float(x0), float(p0), 0.0)]

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        m, w2, f = model.evaluate(t)
        x, p = y[0], y[1]
        return np.array([p / m, -m * w2 * x + f, p * p / (2.0 * m) - 0.5 * m * w2 * x * x + f * x])

    solution = solve_ivp(
        rhs,
        (float(grid[0]), float(grid[-1])),
        np.array([x0, p0, 0.0], dtype=float),
        method=cfg.method,
        t_eval=grid,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
    )
    if not solution.success:
        raise NumericalError(f"centroid integration failed: {solution.message}")
    return [(float(x), float(p), float(s)) for x, p, s in solution.y.T]


def propagate_packet(
    model: QuadraticModel,
    init: ModeState,
    x0: float,
    p0: float,
    t_grid: Sequence[float],
    cfg: IntegratorConfig = IntegratorConfig(),
) -> Trajectory:
    """Run the mode and centroid integrations on one grid and assemble a Trajectory."""
    grid = as_time_grid(t_grid)
    modes = integrate_mode(model, init, grid, cfg)
    centroid = integrate_centroid(model, x0, p0, grid, cfg)
    return Trajectory(
        times=tuple(float(t) for t in grid),
        modes=tuple(modes),
        centroids=tuple((x, p) for x, p, _ in centroid),
        actions=tuple(s for _, _, s in centroid),
    )
