# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Run configuration: search budgets and the settings of one CLI invocation.

Values are layered, lowest precedence first: model defaults, an optional YAML
run file, the environment, then command-line flags. A run file looks like:

    construction: grid12
    region: "0:11,0:11"
    budget:
      k_max: 7
      deterministic: true
"""

import logging
import os
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Literal, Mapping, Optional

import pydantic
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator

from nonrep.colorings import BOARD_KINDS, KINDS, ConstructionSpec
from nonrep.errors import ColoringError, DataValidationError, GraphError
from nonrep.graphs import LatticeRegion

logger = logging.getLogger(__name__)

input_validator = partial(field_validator, mode="before")

ENV_PARALLELISM = "NONREP_PARALLELISM"
ENV_LOG_LEVEL = "NONREP_LOG_LEVEL"
ENV_TRACING_ENDPOINT = "NONREP_TRACING_ENDPOINT"

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
COMMANDS = ("gen-word", "color", "verify", "check-word", "pi", "render")
FORMATS = ("json", "csv", "svg", "text")


def default_parallelism() -> int:
    """Worker count from NONREP_PARALLELISM, else the number of available cores."""
    value = os.getenv(ENV_PARALLELISM)
    if value:
        try:
            return int(value)
        except ValueError:
            logger.warning("ignoring non-integer %s=%r", ENV_PARALLELISM, value)
    return os.cpu_count() or 1


class SearchBudget(BaseModel):
    """Limits of one exhaustive path search."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    k_max: int = Field(default=6, alias="kMax", description="Largest half length searched.")
    max_nodes: int = Field(
        default=10**9, alias="maxNodes", description="Cap on search-tree nodes visited."
    )
    parallelism: int = Field(
        default_factory=default_parallelism, description="Worker processes for the search."
    )
    deterministic: bool = Field(
        default=False, description="Drain every start and apply the global tie-break."
    )

    @input_validator("k_max", "max_nodes", "parallelism")
    def validate_positive(cls, value, info):  # noqa: N805  # pydantic wants 'cls' as first arg
        """Validate counts."""
        value = int(value)
        if value < 1:
            raise ValueError(f"{info.field_name} must be at least 1")
        return value

    @property
    def max_len(self) -> int:
        """Largest path length searched, in vertices."""
        return 2 * self.k_max

    def echo(self) -> Dict[str, int]:
        """The budget block of a verify report."""
        return {
            "maxLen": self.max_len,
            "maxNodes": self.max_nodes,
            "parallelism": self.parallelism,
        }


class RunConfig(BaseModel):
    """Settings of one CLI run."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    command: Optional[Literal["gen-word", "color", "verify", "check-word", "pi", "render"]] = None
    construction: Optional[str] = None
    n: Optional[int] = None
    region: Optional[str] = None
    offsets: Optional[List[int]] = None
    base: Optional[List[int]] = None
    budget: SearchBudget = Field(default_factory=SearchBudget)
    out: Optional[Path] = None
    format: Optional[Literal["json", "csv", "svg", "text"]] = None
    log_level: str = "INFO"
    tracing_endpoint: Optional[str] = None

    @input_validator("construction")
    def validate_construction(cls, kind):  # noqa: N805
        """Validate the construction kind."""
        if kind is not None and kind not in KINDS:
            raise ValueError(f"unknown construction {kind!r}; expected one of {', '.join(KINDS)}")
        return kind

    @input_validator("region")
    def validate_region(cls, region):  # noqa: N805
        """Validate region syntax."""
        if region is None:
            return None
        try:
            LatticeRegion.parse(str(region))
        except GraphError as e:
            raise ValueError(str(e)) from e
        return str(region)

    @input_validator("log_level")
    def validate_log_level(cls, level):  # noqa: N805
        """Validate log level."""
        level = str(level).upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"invalid log level {level!r}; expected one of {LOG_LEVELS}")
        return level

    @classmethod
    def resolve(
        cls,
        path: Optional[Path] = None,
        overrides: Optional[Mapping[str, Any]] = None,
        environ: Optional[Mapping[str, str]] = None,
    ) -> "RunConfig":
        """Layer defaults, the YAML run file, the environment and explicit overrides.

        Override keys naming a budget field (`k_max`, `max_nodes`, `parallelism`,
        `deterministic`) go into the budget. None-valued overrides are ignored.
        """
        data: Dict[str, Any] = dict(_read_run_file(path)) if path is not None else {}
        budget: Dict[str, Any] = dict(data.pop("budget", None) or {})
        env = os.environ if environ is None else environ
        if env.get(ENV_PARALLELISM):
            budget["parallelism"] = env[ENV_PARALLELISM]
        if env.get(ENV_LOG_LEVEL):
            data["log_level"] = env[ENV_LOG_LEVEL]
        if env.get(ENV_TRACING_ENDPOINT):
            data["tracing_endpoint"] = env[ENV_TRACING_ENDPOINT]

        budget_fields = set(SearchBudget.model_fields)
        for key, value in (overrides or {}).items():
            if value is None:
                continue
            if key in budget_fields:
                budget[key] = value
            else:
                data[key] = value
        data["budget"] = budget
        try:
            return cls.model_validate(data)
        except pydantic.ValidationError as e:
            msg = f"invalid run configuration: {e}"
            logger.error(msg)
            raise DataValidationError(msg) from e

    def construction_spec(self) -> ConstructionSpec:
        """The construction these settings describe."""
        if self.construction is None:
            raise ColoringError("no construction given")
        if self.construction in BOARD_KINDS:
            if self.n is None:
                raise ColoringError(f"{self.construction} needs --n")
            return ConstructionSpec(self.construction, n=self.n)
        if self.region is None:
            raise ColoringError(f"{self.construction} needs --region")
        return ConstructionSpec(
            self.construction,
            region=LatticeRegion.parse(self.region),
            n=self.n,
            offsets=tuple(self.offsets) if self.offsets is not None else None,
            base=tuple(self.base) if self.base is not None else None,
        )


def _read_run_file(path: Path) -> Mapping[str, Any]:
    try:
        data = yaml.safe_load(Path(path).read_text())
    except (OSError, yaml.YAMLError) as e:
        msg = f"cannot read run file {path}: {e}"
        logger.error(msg)
        raise DataValidationError(msg) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        msg = f"run file {path} must hold a mapping, got {type(data).__name__}"
        logger.error(msg)
        raise DataValidationError(msg)
    return data
