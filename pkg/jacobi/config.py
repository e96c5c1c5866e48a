from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Final, Optional

HARD_MAX_DEGREE: Final[int] = 10
DEFAULT_MAX_DEGREE: Final[int] = 8
MAX_DEGREE_ENV: Final[str] = "JD_MAX_DEGREE"
OUTPUT_FORMATS: Final[tuple] = ("json", "csv", "text")


class ConfigError(ValueError):
    """
    Raised for run options outside their allowed range.
    """

    ...


def default_max_degree() -> int:
    """
    The degree cap, read from the JD_MAX_DEGREE environment variable if set.

    Raises:
        ConfigError: If the variable is not an integer in 1..10.
    """
    raw = os.environ.get(MAX_DEGREE_ENV)
    if raw is None or raw == "":
        return DEFAULT_MAX_DEGREE
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{MAX_DEGREE_ENV} must be an integer, got {raw!r}")
    return _checked_degree(value)


def _checked_degree(value: int) -> int:
    if not 1 <= value <= HARD_MAX_DEGREE:
        raise ConfigError(
            f"max degree must lie in 1..{HARD_MAX_DEGREE}, got {value}"
        )
    return value


@dataclass(frozen=True)
class RunConfig:
    """
    Options shared by every command.

    Attributes:
        genus (int): Genus g >= 1; labels range over 1+..g-.
        max_degree (int): Largest internal degree a computation may reach.
        output_format (str): One of json, csv, text.
        seed (int): Seed of sampled property checks.
    """

    genus: int = 1
    max_degree: int = DEFAULT_MAX_DEGREE
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise ConfigError(f"genus must be at least 1, got {self.genus}")
        _checked_degree(self.max_degree)
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r}")

    @classmethod
    def from_options(
        cls,
        genus: int = 1,
        max_degree: Optional[int] = None,
        output_format: str = "json",
        seed: int = 0,
    ) -> RunConfig:
        """
        Build a config; explicit options win over the environment.
        """
        degree = default_max_degree() if max_degree is None else max_degree
        return cls(genus, degree, output_format, seed)
