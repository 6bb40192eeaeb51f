"""
Minimal separation q(C).
"""

import logging

from manifolds import ProbeGrid
from models.errors import InvariantViolation, UsageError

from .mesh_norm import mesh_norm
from .point_set import PointSet

logger = logging.getLogger(__name__)


def min_separation(C: PointSet, grid: ProbeGrid = None) -> float:
    """
    Smallest pairwise distance in C.

    When a grid is supplied the relation q(C)/2 <= delta(C) is checked as well.
    """
    if len(C) < 2:
        raise UsageError(f"min_separation needs at least 2 points, got {len(C)}")

    dist, _ = C.index.nearest_k(C.points, 2)
    q = float(dist[:, 1].min())
    if q == 0.0:
        logger.warning("⚠️ Point set contains duplicate points: q(C) = 0")

    if grid is not None:
        delta = mesh_norm(C, grid)
        if q / 2.0 > delta + grid.resolution:
            raise InvariantViolation(f"q(C)/2 = {q / 2:.6g} exceeds delta(C) = {delta:.6g}")
    return q
