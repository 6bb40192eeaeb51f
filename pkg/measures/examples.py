"""
Builders for the standard regular/dominant measures: discrete sets, cap averages and
weighted densities.
"""

from typing import Optional

import numpy as np

from manifolds import ManifoldModel, as_points, ball_measure, probe_grid, reference_quadrature
from models.errors import UsageError
from src.config import DENSITY_LEVELS

from .signed_measure import AtomicMeasure, BallAverageMeasure, DensityMeasure
from .weights import get_weight_function, table_weight


def _mesh_and_separation(m: ManifoldModel, points: np.ndarray):
    from pointsets import mesh_norm, min_separation, PointSet

    C = PointSet(m, points)
    grid = probe_grid(m, m.diameter / 1024)
    return mesh_norm(C, grid), min_separation(C)


def discrete_set_measure(m: ManifoldModel, points) -> AtomicMeasure:
    """
    Atoms at x_k with mass mu(B(x_k, delta(C))); regular and dominant at scale 2 delta(C).
    """
    pts = as_points(m, points)
    delta, _ = _mesh_and_separation(m, pts)
    masses = np.full(pts.shape[0], ball_measure(m, pts[0], delta))
    return AtomicMeasure(manifold=m, points=pts, weights=masses, name="discrete_set")


def cap_average_measure(m: ManifoldModel, points, radius_fraction: float = 0.5,
                        level: Optional[float] = None) -> BallAverageMeasure:
    """
    Density sum_y 1_{B(y, r)} with r = radius_fraction * q(C), radius_fraction in (1/4, 1/2].
    """
    if not 0.25 < radius_fraction <= 0.5:
        raise UsageError(f"radius_fraction must lie in (1/4, 1/2], got {radius_fraction}")
    pts = as_points(m, points)
    _, q = _mesh_and_separation(m, pts)
    rule = reference_quadrature(m, level or DENSITY_LEVELS[m.kind.value])
    return BallAverageMeasure.build(rule, pts, radius_fraction * q, name="cap_average")


def weighted_density_measure(m: ManifoldModel, weight: str = "const", level: Optional[float] = None,
                             table=None, name: Optional[str] = None) -> DensityMeasure:
    """
    w d mu with w from the registry (or a user table), sampled on a reference rule.

    Args:
        m: the manifold
        weight: registry name, ignored when table is given
        level: reference-quadrature level, defaults per manifold
        table: optional rows [coords..., value]
    """
    rule = reference_quadrature(m, level or DENSITY_LEVELS[m.kind.value])
    fn = table_weight(m, table) if table is not None else get_weight_function(weight)
    label = "table" if table is not None else weight
    return DensityMeasure.on_rule(rule, fn(m, rule.nodes), name=name or f"density:{label}")


def uniform_measure(m: ManifoldModel, level: Optional[float] = None) -> DensityMeasure:
    """mu itself, as the constant density 1."""
    return weighted_density_measure(m, "const", level)
