"""
Ordered point sets on a manifold.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from manifolds import GeodesicIndex, ManifoldModel, ProbeGrid, as_points


@dataclass(frozen=True, eq=False)
class PointSet:
    """Canonical points with a lazily built neighbour index."""

    manifold: ManifoldModel
    points: np.ndarray

    def __post_init__(self):
        if len(self.points) == 0:
            pts = np.zeros((0, self.manifold.coord_dim))
        else:
            pts = as_points(self.manifold, self.points)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    @cached_property
    def index(self) -> GeodesicIndex:
        return GeodesicIndex(self.manifold, self.points)

    def take(self, indices) -> "PointSet":
        return PointSet(self.manifold, self.points[np.asarray(indices, dtype=np.int64)])


def grid_points(K) -> np.ndarray:
    """Points of a ProbeGrid, PointSet or plain array."""
    if isinstance(K, ProbeGrid):
        return K.nodes
    if isinstance(K, PointSet):
        return K.points
    return np.asarray(K, dtype=float)
