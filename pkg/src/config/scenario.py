"""Scenario files: the JSON documents driving scans, validation and presets."""

import json
import logging
import math
from pathlib import Path
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, ValidationError, model_validator

from ..core.types import ModeState, ModelKind, QuadraticModel, SqueezeParams
from ..dynamics.integrator import IntegratorConfig
from ..errors import ConfigError, ExpressionError
from ..hamparse.builder import ExpressionFunction, build_model, evaluate_constant
from ..models.closed_form import closed_form_for, minimum_uncertainty_mode

logger = logging.getLogger(__name__)

PRESETS_DIR = Path(__file__).parent / "presets"
PRESETS = ("fig1", "fig2", "fig3", "fig4")


def _resolve_number(value):
    """Numbers may be written as constant expressions such as "3*pi/2"."""
    if isinstance(value, str):
        try:
            return evaluate_constant(value)
        except ExpressionError as e:
            raise ValueError(f"cannot evaluate {value!r}: {e}") from e
    return value


Number = Annotated[float, BeforeValidator(_resolve_number)]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class Grid(_Strict):
    """Uniform grid of count values from start to stop."""

    start: Number
    stop: Number
    count: int = Field(ge=1)
    endpoint: bool = True

    @model_validator(mode="after")
    def _ordered(self) -> "Grid":
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("grid bounds must be finite")
        if self.start > self.stop:
            raise ValueError(f"grid start {self.start} exceeds stop {self.stop}")
        if self.count > 1 and self.start == self.stop:
            raise ValueError("a grid with more than one point needs start < stop")
        return self

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start], dtype=float)
        return np.linspace(self.start, self.stop, self.count, endpoint=self.endpoint)


GridOrNumber = Union[Grid, Number]


def _values(spec: GridOrNumber) -> np.ndarray:
    if isinstance(spec, Grid):
        return spec.values()
    return np.array([float(spec)])


class ReferenceSpec(_Strict):
    """Explicit reference mode at the first grid time, as [re, im] pairs."""

    u: Tuple[float, float]
    du: Tuple[float, float]

    def mode(self, t0: float) -> ModeState:
        return ModeState(t=t0, u=complex(*self.u), du=complex(*self.du))


class _ModelSpec(_Strict):
    force: str = "0"
    params: Dict[str, float] = Field(default_factory=dict)
    reference: Optional[ReferenceSpec] = None

    def _force(self):
        if self.force.strip() == "0":
            return None
        return ExpressionFunction.from_source(self.force, self.params)

    def build(self) -> QuadraticModel:
        raise NotImplementedError

    def reference_mode(self, model: QuadraticModel, t0: float) -> ModeState:
        if self.reference is not None:
            return self.reference.mode(t0)
        return closed_form_for(model)(t0)


class FreeModelSpec(_ModelSpec):
    kind: Literal["free"]
    m0: Number = 1.0

    def build(self) -> QuadraticModel:
        return QuadraticModel.free_particle(self.m0, force=self._force())


class OscillatorModelSpec(_ModelSpec):
    kind: Literal["oscillator"]
    m0: Number = 1.0
    omega0: Number = 1.0

    def build(self) -> QuadraticModel:
        return QuadraticModel.oscillator(self.m0, self.omega0, force=self._force())


class CaldirolaKanaiModelSpec(_ModelSpec):
    kind: Literal["caldirola_kanai"]
    m0: Number = 1.0
    omega0: Number = 1.0
    gamma: Number = 0.0

    def build(self) -> QuadraticModel:
        return QuadraticModel.caldirola_kanai(self.m0, self.omega0, self.gamma, force=self._force())


class CustomModelSpec(_ModelSpec):
    kind: Literal["custom"]
    mass: str
    omega_sq: str

    def build(self) -> QuadraticModel:
        return build_model(self.mass, self.omega_sq, self.force, self.params)

    def reference_mode(self, model: QuadraticModel, t0: float) -> ModeState:
        if self.reference is not None:
            return self.reference.mode(t0)
        m, w2, _ = model.evaluate(t0)
        damping = model.mass_rate(t0) / (2.0 * m)
        reduced = w2 - damping ** 2
        omega = math.sqrt(reduced) if reduced > 0 else 1.0 / m
        return minimum_uncertainty_mode(m, omega, t0, damping=damping)


ModelSpec = Annotated[
    Union[FreeModelSpec, OscillatorModelSpec, CaldirolaKanaiModelSpec, CustomModelSpec],
    Field(discriminator="kind"),
]


class SqueezeSpec(_Strict):
    r: GridOrNumber = 0.0
    theta: GridOrNumber = 0.0

    def pairs(self) -> List[SqueezeParams]:
        """Every distinct (r, theta) combination, ordered by r then reduced theta.

        Angles that coincide after reduction to [0, 2 pi), such as 0 and 2 pi on a
        grid with endpoint, yield one pair.
        """
        rs, thetas = _values(self.r), _values(self.theta)
        combos = {}
        for r in rs:
            for theta in thetas:
                sq = SqueezeParams(r=float(r), theta=float(theta))
                combos.setdefault((sq.r, sq.theta), sq)
        dropped = rs.size * thetas.size - len(combos)
        if dropped:
            logger.warning(f"dropped {dropped} squeeze pairs whose angles coincide modulo 2 pi")
        return [combos[key] for key in sorted(combos)]


class CentroidSpec(_Strict):
    x0: Number = 0.0
    p0: Number = 0.0


Output = Literal["dx", "dp", "S", "S_bar", "bounds", "t_star"]


class Scenario(_Strict):
    """A complete scan description."""

    model: ModelSpec
    squeeze: SqueezeSpec = Field(default_factory=SqueezeSpec)
    time: Grid
    hbar: Number = Field(default=1.0, gt=0)
    outputs: List[Output] = Field(default_factory=lambda: ["dx", "dp", "S"])
    centroid: CentroidSpec = Field(default_factory=CentroidSpec)
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)

    @property
    def kind(self) -> ModelKind:
        return ModelKind(self.model.kind)

    def times(self) -> np.ndarray:
        return self.time.values()


def parse_scenario(data: dict) -> Scenario:
    """Validate a decoded scenario document.

    Raises:
        ConfigError: On unknown keys, missing fields or invalid values
    """
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid scenario: {e}") from e


def load_scenario(path: Union[str, Path]) -> Scenario:
    """Read and validate a JSON scenario file.

    Raises:
        ConfigError: If the file is missing, is not JSON or fails validation
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ConfigError(f"scenario file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"scenario file {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"scenario file {path} must contain a JSON object")
    logger.info(f"Loaded scenario from {path}")
    return parse_scenario(data)


def load_preset(name: str) -> Scenario:
    """Load one of the bundled figure presets (fig1 ... fig4, or 1 ... 4)."""
    key = name if name.startswith("fig") else f"fig{name}"
    if key not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return load_scenario(PRESETS_DIR / f"{key}.json")
