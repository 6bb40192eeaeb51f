"""
Experiment config files.

INI-style sections, comma-separated lists:

    [experiment]
    manifold = circle
    L = 8, 16, 32
    p = 1, 2, inf
    seed = 7

    [measure]
    type = jittered
    n = 32
    jitter = 0.3

    [partition]
    d = 0.196
    relax_d = true
"""

import configparser
from pathlib import Path
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from models.errors import ConfigError
from models.pydantic_models import ManifoldKind


def _split(value):
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ExperimentSection(Section):
    manifold: ManifoldKind = ManifoldKind.CIRCLE
    L: List[float] = Field(default_factory=lambda: [8.0])
    p: List[float] = Field(default_factory=lambda: [2.0])
    seed: int = Field(ge=0, description="Seed for every randomized step")
    trials: int = Field(default=20, ge=1)
    out: Optional[str] = None

    @field_validator("L", "p", mode="before")
    @classmethod
    def split_lists(cls, value):
        return _split(value)

    @field_validator("L")
    @classmethod
    def check_levels(cls, value):
        if not value or any(L < 1 for L in value):
            raise ValueError("every L must be >= 1")
        return value

    @field_validator("p")
    @classmethod
    def check_exponents(cls, value):
        if not value or any(not (p >= 1 or np.isinf(p)) for p in value):
            raise ValueError("every p must be >= 1 or inf")
        return value


class MeasureSection(Section):
    type: Literal["equispaced", "jittered", "arc", "random", "uniform", "density", "discrete_set",
                  "cap_average", "file"] = "equispaced"
    n: int = Field(default=17, ge=1)
    jitter: float = Field(default=0.3, ge=0.0, lt=0.5)
    arc: float = Field(default=np.pi, gt=0.0, description="arc length for type = arc")
    weight: str = Field(default="const", description="weight function for type = density")
    radius_fraction: float = Field(default=0.5, gt=0.25, le=0.5)
    path: Optional[str] = None


class PartitionSection(Section):
    kind: Literal["mz", "trivial"] = "mz"
    d: Optional[float] = Field(default=None, gt=0.0)
    relax_d: bool = False
    grid_factor: float = Field(default=4.0, gt=0.0)


class KernelSection(Section):
    S: Optional[int] = Field(default=None, ge=1)
    probes: int = Field(default=4, ge=1)
    sigma_norm: bool = False
    heat_times: List[float] = Field(default_factory=lambda: [0.2, 0.1, 0.05, 0.02])

    @field_validator("heat_times", mode="before")
    @classmethod
    def split_times(cls, value):
        return _split(value)


class MZSection(Section):
    method: Literal["auto", "sampled"] = "auto"
    strong: bool = False
    pointwise: bool = False
    roundtrip: bool = False
    sup_gap: bool = False


class QuadSection(Section):
    mode: Literal["LP_maximin", "NNLS"] = "LP_maximin"
    functional: Literal["CellAverage", "PointEvaluation"] = "CellAverage"
    Astar: float = Field(default=2.0, ge=1.0)
    verify: bool = True


class PointsSection(Section):
    eps: float = Field(gt=0.0)
    overlap_radius: Optional[float] = Field(default=None, gt=0.0)
    path: Optional[str] = None


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    experiment: ExperimentSection
    measure: MeasureSection = Field(default_factory=MeasureSection)
    partition: PartitionSection = Field(default_factory=PartitionSection)
    kernel: KernelSection = Field(default_factory=KernelSection)
    mz: MZSection = Field(default_factory=MZSection)
    quad: QuadSection = Field(default_factory=QuadSection)
    points: Optional[PointsSection] = None


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(part) for part in item["loc"]) or "config"
        parts.append(f"[{where}] {item['msg']}")
    return "; ".join(parts)


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """
    Raises:
        ConfigError: syntax error (with its line) or invalid field (with section.field)
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as e:
        raise ConfigError(f"{source}: {e}") from e

    data = {name: dict(parser.items(name)) for name in parser.sections()}
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{source}: {_describe(e)}") from e


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    return parse_config(text, source=str(path))


def apply_overrides(config: ExperimentConfig, seed_override: Optional[int] = None,
                    relax_d: bool = False) -> ExperimentConfig:
    """CLI flags win over the file. --out is resolved by the caller and never enters the config."""
    experiment = config.experiment
    if seed_override is not None:
        experiment = experiment.model_copy(update={"seed": seed_override})
    partition = config.partition
    if relax_d:
        partition = partition.model_copy(update={"relax_d": True})
    return config.model_copy(update={"experiment": experiment, "partition": partition})


def hashed_fields(config: Optional[ExperimentConfig]):
    """The config as hashed into reports: everything but where the reports go."""
    if config is None:
        return None
    return config.model_dump(mode="json", exclude={"experiment": {"out"}})
