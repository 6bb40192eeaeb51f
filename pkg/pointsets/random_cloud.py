"""
Seeded point clouds drawn from mu.
"""

import numpy as np

from manifolds import ManifoldModel, random_points
from models.errors import UsageError

from .point_set import PointSet


def random_cloud(m: ManifoldModel, n: int, seed: int = 0) -> PointSet:
    if n < 1:
        raise UsageError(f"need at least one point, got n={n}")
    return PointSet(m, random_points(m, n, np.random.default_rng(seed)))
