"""
Measures and partitions described by an ExperimentConfig.
"""

import logging

import numpy as np

from manifolds import get_manifold
from measures import (
    AtomicMeasure,
    cap_average_measure,
    discrete_set_measure,
    load_measure,
    uniform_measure,
    weighted_density_measure,
)
from models.errors import ConfigError
from models.pydantic_models import ManifoldKind
from pointsets import (
    MAX_SCALE,
    arc_circle,
    build_mz_partition,
    equispaced_circle,
    jittered_circle,
    random_cloud,
    trivial_partition,
)

from .config import ExperimentConfig

logger = logging.getLogger(__name__)

CIRCLE_ONLY = ("equispaced", "jittered", "arc")


def _equal_atoms(points, name: str) -> AtomicMeasure:
    n = len(points)
    return AtomicMeasure(manifold=points.manifold, points=points.points, weights=np.full(n, 1.0 / n), name=name)


def build_measure(config: ExperimentConfig):
    spec = config.measure
    m = get_manifold(config.experiment.manifold)
    seed = config.experiment.seed
    if spec.type in CIRCLE_ONLY and m.kind is not ManifoldKind.CIRCLE:
        raise ConfigError(f"[measure] type = {spec.type} is defined on the circle only")

    if spec.type == "equispaced":
        return _equal_atoms(equispaced_circle(spec.n), f"equispaced_{spec.n}")
    if spec.type == "jittered":
        return _equal_atoms(jittered_circle(spec.n, spec.jitter, seed), f"jittered_{spec.n}")
    if spec.type == "arc":
        return _equal_atoms(arc_circle(spec.n, 0.0, spec.arc), f"arc_{spec.n}")
    if spec.type == "random":
        return _equal_atoms(random_cloud(m, spec.n, seed), f"random_{spec.n}")
    if spec.type == "uniform":
        return uniform_measure(m)
    if spec.type == "density":
        return weighted_density_measure(m, spec.weight)
    if spec.type == "discrete_set":
        return discrete_set_measure(m, random_cloud(m, spec.n, seed).points)
    if spec.type == "cap_average":
        return cap_average_measure(m, random_cloud(m, spec.n, seed).points, spec.radius_fraction)

    if not spec.path:
        raise ConfigError("[measure] type = file needs a path")
    nu = load_measure(spec.path)
    if nu.manifold.kind is not m.kind:
        raise ConfigError(f"[measure] file lives on {nu.manifold.kind.value}, experiment on {m.kind.value}")
    return nu


def partition_scale(config: ExperimentConfig) -> float:
    """[partition] d, or the largest admissible scale not above 1/(4 max L)."""
    if config.partition.d is not None:
        return config.partition.d
    return min(MAX_SCALE, 1.0 / (4.0 * max(config.experiment.L)))


def build_partition(config: ExperimentConfig, nu):
    spec = config.partition
    if spec.kind == "trivial":
        return trivial_partition(nu)
    d = partition_scale(config)
    logger.info("🔄 Building partition of %s at d=%.4g", nu.name, d)
    return build_mz_partition(nu, d, relax_d=spec.relax_d, grid_factor=spec.grid_factor)
