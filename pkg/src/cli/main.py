"""Command-line entry point.

    wavepacket-entropy scan --config scenario.json [--out data.csv] [--jobs N]
    wavepacket-entropy validate --config scenario.json [--quad-nodes N]
    wavepacket-entropy tstar --config scenario.json
    wavepacket-entropy probe --config scenario.json
    wavepacket-entropy figure 3 [--out fig3.csv]
    wavepacket-entropy serve

Exit codes: 0 success, 1 failed validation, 2 configuration, expression or
model error, 3 numerical error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from ..config.scenario import Scenario, load_preset, load_scenario
from ..config.settings import Settings, configure_logging, load_settings
from ..errors import (
    ConfigError,
    ExpressionError,
    ModelError,
    NumericalError,
    ValidationError,
    WavePacketError,
    ZeroAmplitude,
)
from .runner import run_probe, run_scan, run_tstar, run_validate

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def exit_code_for(error: WavePacketError) -> int:
    """Map a library error to the documented exit status."""
    if isinstance(error, (NumericalError, ZeroAmplitude)):
        return EXIT_NUMERICAL
    if isinstance(error, (ConfigError, ExpressionError, ModelError, ValidationError)):
        return EXIT_CONFIG
    return EXIT_NUMERICAL


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, help="Write output to this file instead of standard output")
    common.add_argument("--jobs", type=_positive_int, help="Worker threads (default: WAVEPACKET_JOBS or 1)")
    common.add_argument(
        "--quad-nodes", type=_positive_int, help="Random-phase quadrature nodes (default: WAVEPACKET_QUAD_NODES or 512)"
    )
    common.add_argument("--log-level", help="Logging level (default: LOG_LEVEL or INFO)")

    with_config = argparse.ArgumentParser(add_help=False, parents=[common])
    with_config.add_argument("--config", type=Path, required=True, help="Scenario JSON file")

    parser = argparse.ArgumentParser(
        prog="wavepacket-entropy",
        description="Joint position-momentum entropy of squeezed Gaussian wave packets",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("scan", parents=[with_config], help="Scan S over the (r, theta, t) grid")
    commands.add_parser("validate", parents=[with_config], help="Run the consistency checks")
    commands.add_parser("tstar", parents=[with_config], help="Tabulate the entropy-minimum time t*")
    commands.add_parser("probe", parents=[with_config], help="Probe monotonicity of the random-phase entropy")
    figure = commands.add_parser("figure", parents=[common], help="Scan a bundled preset")
    figure.add_argument("number", choices=["1", "2", "3", "4"], help="Preset number")
    commands.add_parser("serve", parents=[common], help="Run the tool server over stdio")
    return parser


def _emit(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out.write_text(text, encoding="utf-8", newline="\n")
    logger.info(f"Wrote {out}")


def _load(args: argparse.Namespace) -> Scenario:
    if args.command == "figure":
        return load_preset(args.number)
    return load_scenario(args.config)


def _dispatch(args: argparse.Namespace, settings: Settings) -> int:
    jobs = args.jobs or settings.jobs
    quad_nodes = args.quad_nodes or settings.quad_nodes

    if args.command == "serve":
        from ..server import main as serve

        serve()
        return EXIT_OK

    scenario = _load(args)
    if args.command in ("scan", "figure"):
        _emit(run_scan(scenario, jobs=jobs), args.out)
    elif args.command == "tstar":
        _emit(run_tstar(scenario, jobs=jobs), args.out)
    elif args.command == "probe":
        _emit(run_probe(scenario, jobs=jobs), args.out)
    elif args.command == "validate":
        report = run_validate(scenario, quad_nodes=quad_nodes, density_points=settings.density_points)
        _emit(report.render(), args.out)
        return EXIT_OK if report.passed else EXIT_VALIDATION_FAILED
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = load_settings()
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    configure_logging(args.log_level or settings.log_level)

    try:
        return _dispatch(args, settings)
    except WavePacketError as e:
        code = exit_code_for(e)
        logger.error(f"{args.command} failed: {type(e).__name__}: {e}")
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return code
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130
