"""Command-line scenario runner."""

from .main import build_parser, exit_code_for, main
from .runner import (
    PreparedScenario,
    ValidationReport,
    prepare_scenario,
    run_probe,
    run_scan,
    run_tstar,
    run_validate,
    scan_header,
)

__all__ = [
    "PreparedScenario",
    "ValidationReport",
    "build_parser",
    "exit_code_for",
    "main",
    "prepare_scenario",
    "run_probe",
    "run_scan",
    "run_tstar",
    "run_validate",
    "scan_header",
]
