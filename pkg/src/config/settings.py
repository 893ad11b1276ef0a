"""Process settings from the environment and logging setup."""

import logging
import os
import sys
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..errors import ConfigError

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Settings(BaseModel):
    """Runtime settings; CLI flags override them."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    log_level: str = "INFO"
    jobs: int = Field(default=1, ge=1)
    quad_nodes: int = Field(default=512, ge=64)
    density_points: int = Field(default=2001, ge=32)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ValueError(f"unknown log level {value!r}")
        return level

    @field_validator("quad_nodes")
    @classmethod
    def _even_nodes(cls, value: int) -> int:
        if value % 2:
            raise ValueError("quad_nodes must be even")
        return value


def load_settings(env_file: Optional[str] = None) -> Settings:
    """Read settings from the environment after loading a .env file.

    Raises:
        ConfigError: If a variable holds an invalid value
    """
    load_dotenv(env_file)
    values = {
        "log_level": os.getenv("LOG_LEVEL", "INFO"),
        "jobs": os.getenv("WAVEPACKET_JOBS", "1"),
        "quad_nodes": os.getenv("WAVEPACKET_QUAD_NODES", "512"),
        "density_points": os.getenv("WAVEPACKET_DENSITY_POINTS", "2001"),
    }
    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigError(f"invalid environment settings: {e}") from e


def configure_logging(level: str = "INFO") -> None:
    """Route log records to standard error; standard output carries data."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )
