"""
Partition cells as membership predicates: a center list plus a labelling rule.

labels(points) returns the cell index of each point, or -1 when the point is not covered.
"""

from abc import ABC, abstractmethod

import numpy as np

from manifolds import as_points

from .point_set import PointSet

CHUNK = 8192


class CellPredicate(ABC):
    centers: PointSet

    @property
    def n_cells(self) -> int:
        return len(self.centers)

    @abstractmethod
    def labels(self, points) -> np.ndarray:
        ...


class FirstBallCells(CellPredicate):
    """p belongs to cell k iff k is the smallest index with rho(p, y_k) <= radius."""

    def __init__(self, centers: PointSet, radius: float):
        self.centers = centers
        self.radius = float(radius)

    def labels(self, points) -> np.ndarray:
        pts = as_points(self.centers.manifold, points)
        out = np.full(pts.shape[0], -1, dtype=np.int64)
        for start in range(0, pts.shape[0], CHUNK):
            hood = self.centers.index.neighbourhood(pts[start:start + CHUNK], self.radius)
            lengths = np.diff(hood.indptr)
            hit = lengths > 0
            # Rows are index-sorted, so the first stored column is the smallest index
            out[start:start + CHUNK][hit] = hood.indices[hood.indptr[:-1][hit]]
        return out


class NearestCells(CellPredicate):
    """p belongs to the cell of its nearest center (Voronoi cells)."""

    def __init__(self, centers: PointSet):
        self.centers = centers

    def labels(self, points) -> np.ndarray:
        _, idx = self.centers.index.nearest(points)
        return idx


class MergedCells(CellPredicate):
    """Cells of a parent predicate relabelled through an index map phi."""

    def __init__(self, parent: CellPredicate, phi: np.ndarray, centers: PointSet):
        self.parent = parent
        self.phi = np.asarray(phi, dtype=np.int64)
        self.centers = centers

    def labels(self, points) -> np.ndarray:
        base = self.parent.labels(points)
        return np.where(base >= 0, self.phi[np.maximum(base, 0)], -1)
