"""Wave-packet entropy tool server built on the MCP SDK.

Exposes the entropy calculations as tools over stdio. Every tool returns a
dict with "success"; failures carry "error" and "error_type" instead of
raising into the transport.
"""

import logging
from typing import Any, Dict, Optional, Union

from mcp.server.fastmcp import FastMCP

from .cli.runner import prepare_scenario, run_scan, run_validate
from .config.scenario import parse_scenario
from .config.settings import configure_logging, load_settings
from .core.modes import squeeze_mode, variances
from .entropy.closed_forms import entropy_minimum_time
from .entropy.joint import ENTROPY_FLOOR, entropy_record
from .errors import WavePacketError
from .models.closed_form import free_mode
from .randomphase.phase_average import (
    energy_expectation,
    random_phase_closed,
    random_phase_quadrature,
    random_phase_record,
    squeeze_log_factor,
    squeezed_entropy,
)

logger = logging.getLogger(__name__)

mcp = FastMCP(name="Wave Packet Entropy Server")

Number = Union[float, str]


def _failure(action: str, error: Exception) -> Dict[str, Any]:
    if isinstance(error, WavePacketError):
        logger.warning(f"{action} failed: {error}")
    else:
        logger.error(f"{action} failed unexpectedly: {error}")
    return {
        "success": False,
        "error": f"Failed to {action}: {error}",
        "error_type": type(error).__name__,
    }


def _single_point(model: Dict[str, Any], r: Number, theta: Number, t: float, t0: float, hbar: float):
    """Prepare a scenario that integrates the reference mode from t0 to t."""
    scenario = parse_scenario({
        "model": model,
        "squeeze": {"r": r, "theta": theta},
        "time": {"start": t0, "stop": t, "count": 1 if t == t0 else 2},
        "hbar": hbar,
    })
    prepared = prepare_scenario(scenario)
    return prepared, scenario.squeeze.pairs()[0]


@mcp.tool()
async def joint_entropy_for_squeeze(
    model: Dict[str, Any],
    r: Number,
    theta: Number,
    t: float,
    t0: float = 0.0,
    hbar: float = 1.0,
) -> dict:
    """Joint position-momentum entropy of a squeezed Gaussian packet at time t.

    Args:
        model: Model description, e.g. {"kind": "oscillator", "m0": 1, "omega0": 1}
            or {"kind": "custom", "mass": "exp(0.2*t)", "omega_sq": "1"}
        r: Squeeze magnitude
        theta: Squeeze angle; expressions such as "3*pi/2" are accepted
        t: Evaluation time
        t0: Time at which the reference mode starts
        hbar: Reduced Planck constant

    Returns:
        dx, dp, S and S - ln(e/2)
    """
    try:
        prepared, sq = _single_point(model, r, theta, t, t0, hbar)
        ref, m = prepared.reference[-1], prepared.masses[-1]
        record = entropy_record(ref.t, variances(squeeze_mode(ref, sq), m, prepared.consts), prepared.consts)
        return {
            "success": True,
            "r": sq.r,
            "theta": sq.theta,
            "t": record.t,
            "dx": record.dx,
            "dp": record.dp,
            "S": record.s,
            "S_minus_floor": record.s_minus_floor,
        }
    except Exception as e:
        return _failure("compute the joint entropy", e)


@mcp.tool()
async def random_phase_entropy(
    model: Dict[str, Any],
    r: Number,
    t: float,
    t0: float = 0.0,
    hbar: float = 1.0,
    quad_nodes: int = 512,
) -> dict:
    """Joint entropy averaged over a uniformly random squeeze angle.

    Returns the closed form, its quadrature check, the lower bound and the
    centroid-free <H>. Where omega(t) > 0 it also returns the upper bound and
    <H> in units of hbar omega; both are None otherwise.
    """
    try:
        prepared, sq = _single_point(model, r, 0.0, t, t0, hbar)
        ref, m, quadratic = prepared.reference[-1], prepared.masses[-1], prepared.model
        energy = energy_expectation(ref, quadratic, ref.t, prepared.consts)
        if quadratic.evaluate(ref.t)[1] > 0.0:
            record = random_phase_record(sq.r, ref, quadratic, prepared.consts, quad_nodes)
            return {
                "success": True,
                "t": record.t,
                "S_bar": record.s_bar_closed,
                "S_bar_quadrature": record.s_bar_quadrature,
                "lower": record.lower_bound,
                "upper": record.upper_bound,
                "energy": energy,
                "energy_over_hbar_omega": record.energy_expectation,
            }
        return {
            "success": True,
            "t": ref.t,
            "S_bar": random_phase_closed(sq.r, ref, m),
            "S_bar_quadrature": random_phase_quadrature(sq.r, ref, m, quad_nodes),
            "lower": ENTROPY_FLOOR + squeeze_log_factor(sq.r),
            "upper": None,
            "energy": energy,
            "energy_over_hbar_omega": None,
        }
    except Exception as e:
        return _failure("compute the random-phase entropy", e)


@mcp.tool()
async def free_particle_minimum_time(r: Number, theta: Number, m0: float = 1.0) -> dict:
    """Time t* at which a squeezed free packet reaches the entropy floor ln(e/2).

    t* exists only for 0 < r and pi < theta < 2 pi; otherwise "t_star" is None.
    """
    try:
        prepared, sq = _single_point({"kind": "free", "m0": m0}, r, theta, 0.0, 0.0, 1.0)
        t_star = entropy_minimum_time(sq, prepared.model.m0)
        s_star: Optional[float] = None
        if t_star is not None:
            s_star = squeezed_entropy(free_mode(prepared.model.m0, t_star), prepared.model.m0, sq)
        return {"success": True, "r": sq.r, "theta": sq.theta, "t_star": t_star, "S_t_star": s_star}
    except Exception as e:
        return _failure("compute t*", e)


@mcp.tool()
async def scan_scenario(scenario: Dict[str, Any], jobs: int = 1) -> dict:
    """Run a full scan and return the CSV document.

    Args:
        scenario: Scenario document with the same keys as a scenario file
        jobs: Worker threads

    Returns:
        The CSV text and its row count
    """
    try:
        text = run_scan(parse_scenario(scenario), jobs=jobs)
        return {"success": True, "csv": text, "rows": text.count("\n") - 1}
    except Exception as e:
        return _failure("run the scan", e)


@mcp.tool()
async def validate_scenario(scenario: Dict[str, Any], quad_nodes: int = 512) -> dict:
    """Run the consistency checks for a scenario and return the report."""
    try:
        report = run_validate(parse_scenario(scenario), quad_nodes=quad_nodes)
        return {"success": True, "passed": report.passed, "failures": report.failures, "report": report.render()}
    except Exception as e:
        return _failure("validate the scenario", e)


def main():
    """Main entry point for the tool server."""
    settings = load_settings()
    configure_logging(settings.log_level)
    logger.info("Wave packet entropy server starting on stdio")
    try:
        mcp.run()
    except Exception as e:
        logger.error(f"Server error: {e}")
        raise


if __name__ == "__main__":
    main()
