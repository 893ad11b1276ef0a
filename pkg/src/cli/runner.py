"""Scenario execution: scans, t* tables, validation reports and monotonicity probes.

Every command integrates the reference mode once over the scenario's time
grid and squeezes it per (r, theta); squeezing commutes with the linear
evolution, so this is the same as propagating each squeezed mode.
"""

import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import List, Optional, Sequence, Set, Tuple

import numpy as np

from ..config.scenario import Scenario
from ..core.modes import squeeze_mode, variances
from ..core.types import GaussianPacket, ModeState, ModelKind, PhysicalConstants, QuadraticModel, SqueezeParams
from ..dynamics.density import DensityKind, evaluate_density
from ..dynamics.integrator import as_time_grid, integrate_mode, propagate_packet
from ..entropy.closed_forms import entropy_minimum_time, free_entropy_closed, oscillator_entropy_closed
from ..entropy.joint import ENTROPY_FLOOR, entropy_record, joint_entropy, leipnik_numeric
from ..errors import ConfigError, WavePacketError, WronskianDriftExceeded, with_context
from ..models.closed_form import closed_form_for, free_mode
from ..randomphase.phase_average import (
    free_random_phase,
    free_random_phase_printed,
    random_phase_bounds,
    random_phase_closed,
    random_phase_monotonicity,
    random_phase_quadrature,
    squeeze_log_factor,
    squeezed_entropy,
)

logger = logging.getLogger(__name__)

SCAN_COLUMNS = ("r", "theta", "t", "dx", "dp", "S", "S_minus_floor")
TSTAR_COLUMNS = ("r", "theta", "t_star", "S_t_star", "t_grid_min", "S_grid_min")
PROBE_COLUMNS = ("r", "min_forward_difference", "decreasing_points")

CLOSED_FORM_TOLERANCE = 1e-8
DENSITY_TOLERANCE = 1e-5
QUADRATURE_TOLERANCE = 1e-9
BOUND_TOLERANCE = 1e-10
FLOOR_TOLERANCE = 1e-10

# validate samples at most this many grid times and squeeze pairs
SAMPLE_TIMES = 20
SAMPLE_SQUEEZES = 16


@dataclass(frozen=True)
class PreparedScenario:
    """A scenario with its model built and its reference mode integrated."""

    scenario: Scenario
    model: QuadraticModel
    consts: PhysicalConstants
    reference: Tuple[ModeState, ...]
    masses: Tuple[float, ...]

    @property
    def times(self) -> Tuple[float, ...]:
        return tuple(mode.t for mode in self.reference)


def prepare_scenario(scenario: Scenario) -> PreparedScenario:
    """Build the model and integrate the reference mode over the time grid."""
    model = scenario.model.build()
    times = as_time_grid(scenario.times())
    reference_init = scenario.model.reference_mode(model, float(times[0]))
    reference = integrate_mode(model, reference_init, times, scenario.integrator.for_entropy())
    return PreparedScenario(
        scenario=scenario,
        model=model,
        consts=PhysicalConstants(hbar=scenario.hbar),
        reference=tuple(reference),
        masses=tuple(model.mass_at(mode.t) for mode in reference),
    )


def _format(value: Optional[float]) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return f"{value:.17g}"


def _write_csv(header: Sequence[str], rows: Sequence[Sequence[Optional[float]]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format(value) for value in row])
    return buffer.getvalue()


# Scan

def _scan_rows(prepared: PreparedScenario, outputs: Set[str], sq: SqueezeParams) -> List[List[Optional[float]]]:
    model, consts = prepared.model, prepared.consts
    t_star = entropy_minimum_time(sq, model.m0) if "t_star" in outputs else None
    rows = []
    for ref, m in zip(prepared.reference, prepared.masses):
        try:
            record = entropy_record(ref.t, variances(squeeze_mode(ref, sq), m, consts), consts)
            row: List[Optional[float]] = [sq.r, sq.theta, ref.t, record.dx, record.dp, record.s, record.s_minus_floor]
            if "S_bar" in outputs:
                row.append(random_phase_closed(sq.r, ref, m))
            if "bounds" in outputs:
                bounds = random_phase_bounds(sq.r, ref, model, ref.t, consts)
                row.extend([bounds.lower, bounds.upper])
            if "t_star" in outputs:
                row.append(t_star)
        except WavePacketError as e:
            raise with_context(e, r=sq.r, theta=sq.theta, t=ref.t) from e
        rows.append(row)
    return rows


def scan_header(outputs: Sequence[str]) -> List[str]:
    header = list(SCAN_COLUMNS)
    if "S_bar" in outputs:
        header.append("S_bar")
    if "bounds" in outputs:
        header.extend(["lower", "upper"])
    if "t_star" in outputs:
        header.append("t_star")
    return header


def run_scan(scenario: Scenario, jobs: int = 1) -> str:
    """Evaluate the requested quantities on every (r, theta, t) grid point.

    Rows are ordered by r, then reduced theta, then t, independently of jobs.

    Raises:
        ConfigError: If t_star is requested for a model other than the free particle
        WavePacketError: Any module error, with the failing grid point in its message
    """
    outputs = set(scenario.outputs)
    prepared = prepare_scenario(scenario)
    if "t_star" in outputs and prepared.model.kind is not ModelKind.FREE:
        raise ConfigError("the t_star output is defined for the free particle only")

    pairs = scenario.squeeze.pairs()
    logger.info(f"Scanning {len(pairs)} squeeze pairs x {len(prepared.reference)} times with {jobs} worker(s)")
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        blocks = list(pool.map(partial(_scan_rows, prepared, outputs), pairs))
    rows = [row for block in blocks for row in block]
    logger.info(f"Scan produced {len(rows)} rows")
    return _write_csv(scan_header(scenario.outputs), rows)


# t*

def _tstar_row(prepared: PreparedScenario, sq: SqueezeParams) -> List[Optional[float]]:
    m0 = prepared.model.m0
    t_star = entropy_minimum_time(sq, m0)
    s_star = None
    if t_star is not None:
        s_star = squeezed_entropy(free_mode(m0, t_star), m0, sq, prepared.consts)
    try:
        entropies = [
            squeezed_entropy(ref, m, sq, prepared.consts) for ref, m in zip(prepared.reference, prepared.masses)
        ]
    except WavePacketError as e:
        raise with_context(e, r=sq.r, theta=sq.theta) from e
    best = int(np.argmin(entropies))
    return [sq.r, sq.theta, t_star, s_star, prepared.reference[best].t, entropies[best]]


def run_tstar(scenario: Scenario, jobs: int = 1) -> str:
    """Tabulate the analytic entropy-minimum time next to the grid minimum.

    Raises:
        ConfigError: For models other than the free particle, or a free model
            with an overridden reference mode
    """
    if scenario.kind is not ModelKind.FREE:
        raise ConfigError(f"tstar needs a free-particle model, got {scenario.kind.value}")
    if scenario.model.reference is not None:
        raise ConfigError("tstar assumes the closed-form free reference; remove the reference override")
    prepared = prepare_scenario(scenario)
    pairs = scenario.squeeze.pairs()
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        rows = list(pool.map(partial(_tstar_row, prepared), pairs))
    return _write_csv(TSTAR_COLUMNS, rows)


# Probe

def _probe_row(prepared: PreparedScenario, r: float) -> List[Optional[float]]:
    scenario = prepared.scenario
    report = random_phase_monotonicity(
        prepared.model, prepared.reference[0], r, prepared.times, scenario.integrator
    )
    return [r, report.min_forward_difference, len(report.decreasing_times)]


def run_probe(scenario: Scenario, jobs: int = 1) -> str:
    """Probe whether the random-phase entropy is nondecreasing, one row per r."""
    prepared = prepare_scenario(scenario)
    radii = sorted({sq.r for sq in scenario.squeeze.pairs()})
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        rows = list(pool.map(partial(_probe_row, prepared), radii))
    return _write_csv(PROBE_COLUMNS, rows)


# Validate

@dataclass
class ValidationReport:
    """Pass/fail lines with measured residuals, plus informational notes."""

    lines: List[str] = field(default_factory=list)
    failures: int = 0

    def check(self, name: str, residual: float, tolerance: float) -> bool:
        ok = residual <= tolerance
        if not ok:
            self.failures += 1
        self.lines.append(f"{'PASS' if ok else 'FAIL'} {name}: residual={residual:.3e} tolerance={tolerance:.1e}")
        return ok

    def fail(self, name: str, detail: str) -> None:
        self.failures += 1
        self.lines.append(f"FAIL {name}: {detail}")

    def skip(self, name: str, reason: str) -> None:
        self.lines.append(f"SKIP {name}: {reason}")

    def note(self, text: str) -> None:
        self.lines.append(f"NOTE {text}")

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def render(self) -> str:
        verdict = "PASSED" if self.passed else f"FAILED ({self.failures} check(s))"
        return "\n".join(self.lines + [f"RESULT {verdict}"]) + "\n"


def _sample_indices(size: int, limit: int) -> List[int]:
    if size <= limit:
        return list(range(size))
    return sorted({int(i) for i in np.linspace(0, size - 1, limit).round()})


def _closed_form_entropy(scenario: Scenario, model: QuadraticModel, consts: PhysicalConstants):
    """The closed-form entropy as a function of (sq, t), or None when there is none."""
    if scenario.model.reference is not None or model.kind is ModelKind.CUSTOM:
        return None
    if model.kind is ModelKind.FREE:
        return lambda sq, t: free_entropy_closed(sq, t / model.m0)
    if model.kind is ModelKind.OSCILLATOR:
        return lambda sq, t: oscillator_entropy_closed(sq, model.omega0, t)
    analytic = closed_form_for(model)

    def caldirola_kanai(sq: SqueezeParams, t: float) -> float:
        return squeezed_entropy(analytic(t), model.mass_at(t), sq, consts)

    return caldirola_kanai


def run_validate(scenario: Scenario, quad_nodes: int = 512, density_points: int = 2001) -> ValidationReport:
    """Run the consistency checks on a scenario.

    Checks the Wronskian along the integration, the closed-form, ODE and
    density-quadrature entropies against each other, the entropy floor, the
    random-phase closed form against quadrature, and the bounds on S_bar.
    Assumptions and the printed-form discrepancies are reported as notes.
    """
    report = ValidationReport()
    model = scenario.model.build()
    consts = PhysicalConstants(hbar=scenario.hbar)
    cfg = scenario.integrator.for_entropy()
    times = as_time_grid(scenario.times())
    reference_init = scenario.model.reference_mode(model, float(times[0]))

    try:
        trajectory = propagate_packet(
            model, reference_init, scenario.centroid.x0, scenario.centroid.p0, times, cfg
        )
    except WronskianDriftExceeded as e:
        logger.error(f"Wronskian check failed: {e}")
        report.fail("wronskian", f"WronskianDriftExceeded: {e}")
        return report
    report.check("wronskian", trajectory.max_wronskian_drift(model), cfg.wronskian_alarm)
    report.note(f"entropy integrations use {cfg.method} with rel_tol={cfg.rel_tol:.1e}, abs_tol={cfg.abs_tol:.1e}")

    all_pairs = scenario.squeeze.pairs()
    pairs = [all_pairs[i] for i in _sample_indices(len(all_pairs), SAMPLE_SQUEEZES)]
    indices = _sample_indices(len(trajectory), SAMPLE_TIMES)
    closed = _closed_form_entropy(scenario, model, consts)

    closed_residual = density_residual = 0.0
    floor_margin = math.inf
    for sq in pairs:
        for i in indices:
            packet = trajectory.packet(i)
            t = packet.t
            m = model.mass_at(t)
            squeezed = GaussianPacket(squeeze_mode(packet.mode, sq), packet.x_c, packet.p_c, packet.s_c)
            s_ode = joint_entropy(variances(squeezed.mode, m, consts), consts)
            floor_margin = min(floor_margin, s_ode - ENTROPY_FLOOR)
            if closed is not None:
                closed_residual = max(closed_residual, abs(closed(sq, t) - s_ode))
            position = evaluate_density(squeezed, m, consts, DensityKind.POSITION, n_points=density_points)
            momentum = evaluate_density(squeezed, m, consts, DensityKind.MOMENTUM, n_points=density_points)
            density_residual = max(density_residual, abs(leipnik_numeric(position, momentum, consts) - s_ode))

    if closed is None:
        report.skip("closed-form entropy", "no closed form for this model or reference")
    else:
        report.check("closed-form vs ODE entropy", closed_residual, CLOSED_FORM_TOLERANCE)
    report.check("density quadrature vs ODE entropy", density_residual, DENSITY_TOLERANCE)
    report.check("entropy floor ln(e/2)", max(0.0, -floor_margin), FLOOR_TOLERANCE)

    _check_random_phase(
        report, model, trajectory.modes, sorted({sq.r for sq in pairs}), indices, consts, quad_nodes
    )

    if model.kind is ModelKind.FREE and scenario.model.reference is None:
        _check_free_particle(report, model, pairs, times, consts, quad_nodes)

    last = trajectory.packet(len(trajectory) - 1)
    report.note(
        f"centroid: the centroid equation is integrated for x_c with p_c = m x_c'; "
        f"at t={last.t:.6g}: x_c={last.x_c:.12g}, p_c={last.p_c:.12g}, s_c={last.s_c:.12g}"
    )
    logger.info(f"Validation finished with {report.failures} failure(s)")
    return report


def _check_random_phase(
    report: ValidationReport,
    model: QuadraticModel,
    modes: Sequence[ModeState],
    radii: Sequence[float],
    indices: Sequence[int],
    consts: PhysicalConstants,
    quad_nodes: int,
) -> None:
    quadrature_residual = bound_residual = 0.0
    printed_lower_gaps: List[float] = []
    printed_upper_violations = 0
    bounded = upper_skipped = 0
    for r in radii:
        for i in indices:
            ref = modes[i]
            m = model.mass_at(ref.t)
            s_bar = random_phase_closed(r, ref, m)
            quadrature = random_phase_quadrature(r, ref, m, quad_nodes)
            quadrature_residual = max(quadrature_residual, abs(s_bar - quadrature))
            if model.evaluate(ref.t)[1] <= 0.0:
                upper_skipped += 1
                lower = ENTROPY_FLOOR + squeeze_log_factor(r)
                bound_residual = max(bound_residual, lower - s_bar)
                continue
            bounds = random_phase_bounds(r, ref, model, ref.t, consts)
            bounded += 1
            bound_residual = max(bound_residual, bounds.lower - s_bar, s_bar - bounds.upper)
            if not bounds.printed_lower_holds:
                printed_lower_gaps.append(bounds.printed_lower - s_bar)
            if not bounds.printed_upper_holds:
                printed_upper_violations += 1

    report.check(f"S_bar closed form vs {quad_nodes}-node quadrature", quadrature_residual, QUADRATURE_TOLERANCE)
    report.check("S_bar bounds", max(0.0, bound_residual), BOUND_TOLERANCE)
    if upper_skipped:
        report.skip("S_bar upper bound", f"omega(t) <= 0 at {upper_skipped} sample(s); lower bound checked alone")
    if bounded:
        gap = f", largest gap {max(printed_lower_gaps):.12g} (ln 2 = {math.log(2.0):.12g})" if printed_lower_gaps else ""
        report.note(
            f"printed bounds: ln(e/2) + ln(cosh 2r + 1) exceeds S_bar at {len(printed_lower_gaps)} of "
            f"{bounded} sample(s){gap}; the printed upper form fails at {printed_upper_violations}"
        )
        if printed_lower_gaps:
            logger.warning(f"printed lower bound violated at {len(printed_lower_gaps)} sample(s)")


def _check_free_particle(
    report: ValidationReport,
    model: QuadraticModel,
    pairs: Sequence[SqueezeParams],
    times: np.ndarray,
    consts: PhysicalConstants,
    quad_nodes: int,
) -> None:
    m0 = model.m0
    at_minimum = []
    for sq in pairs:
        t_star = entropy_minimum_time(sq, m0)
        if t_star is not None:
            at_minimum.append(squeezed_entropy(free_mode(m0, t_star), m0, sq, consts) - ENTROPY_FLOOR)
    if at_minimum:
        report.check("S(t*) at the floor", max(abs(value) for value in at_minimum), FLOOR_TOLERANCE)
    report.note("t* = -m0 (1 - e^(-4r)) sin(theta) / (2 (sin^2(theta/2) + e^(-4r) cos^2(theta/2))) carries m0")

    t = float(times[-1]) if times[-1] > 0 else m0
    r = max((sq.r for sq in pairs), default=0.0) or 0.5
    T = t / m0
    quadrature = random_phase_quadrature(r, free_mode(m0, t), m0, quad_nodes)
    half, printed = free_random_phase(r, T), free_random_phase_printed(r, T)
    report.check("free S_bar with 1/2 ln(1 + T^2)", abs(quadrature - half), QUADRATURE_TOLERANCE)
    report.note(
        f"free-particle S_bar exponent at r={r:.6g}, T={T:.6g}: quadrature {quadrature:.12g}, "
        f"1/2 ln(1 + T^2) form {half:.12g}, ln(1 + T^2) form {printed:.12g}"
    )

