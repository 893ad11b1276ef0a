"""Environment settings, logging setup and scenario files."""

from .scenario import (
    PRESETS,
    CaldirolaKanaiModelSpec,
    CentroidSpec,
    CustomModelSpec,
    FreeModelSpec,
    Grid,
    OscillatorModelSpec,
    ReferenceSpec,
    Scenario,
    SqueezeSpec,
    load_preset,
    load_scenario,
    parse_scenario,
)
from .settings import Settings, configure_logging, load_settings

__all__ = [
    "PRESETS",
    "CaldirolaKanaiModelSpec",
    "CentroidSpec",
    "CustomModelSpec",
    "FreeModelSpec",
    "Grid",
    "OscillatorModelSpec",
    "ReferenceSpec",
    "Scenario",
    "Settings",
    "SqueezeSpec",
    "configure_logging",
    "load_preset",
    "load_scenario",
    "load_settings",
    "parse_scenario",
]
