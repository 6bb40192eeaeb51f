"""
Merge cells with too little tau-mass into a neighbouring heavy cell.
"""

import logging
from dataclasses import dataclass

import numpy as np

from manifolds import GeodesicIndex, geodesic_distance
from manifolds.geometry import closed_radius
from models.errors import InvariantViolation, NotDominantError, OrphanPointsError, UsageError

from .cells import CellPredicate, MergedCells
from .overlap_count import overlap_count
from .point_set import PointSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MergeResult:
    """
    Attributes:
        G: surviving centers
        kept: positions of G inside A
        phi: map from positions in A to positions in G
        Y: merged membership predicate, cells indexed by G
        c: 1 / overlap count
        m: smallest tau-mass of a ball B(z, gamma * delta)
    """

    G: PointSet
    kept: np.ndarray
    phi: np.ndarray
    Y: MergedCells
    c: float
    m: float

    @property
    def threshold(self) -> float:
        return self.c * self.m


def node_masses(tau):
    """(nodes, nonnegative masses) of a measure, probe grid or (nodes, masses) pair."""
    if isinstance(tau, tuple):
        nodes, masses = tau
        return np.asarray(nodes, dtype=float), np.asarray(masses, dtype=float)
    if hasattr(tau, "abs_masses"):
        return tau.nodes, tau.abs_masses
    return tau.nodes, tau.weights


def merge_partition(A: PointSet, Z: CellPredicate, tau, gamma: float, delta: float) -> MergeResult:
    """
    Merge step over a partition subordinate to the balls B(y, gamma * delta).

    m is the smallest tau-mass of a ball B(z, gamma*delta), c the reciprocal of the
    largest number of centers within 2*gamma*delta of a center. Cells with
    tau(Z_y) >= c*m survive; every other z goes to the lowest-index y maximizing
    tau(B(z, gamma*delta) & Z_y).

    Args:
        A: centers of Z, in order
        Z: membership predicate with cells indexed like A
        tau: nonnegative measure (SignedMeasure uses |nu|, ProbeGrid uses its weights)
        gamma, delta: the cells satisfy Z_y inside B(y, gamma * delta)

    Returns:
        MergeResult

    Raises:
        NotDominantError: some ball B(z, gamma*delta) has zero tau-mass
    """
    if gamma <= 0 or delta <= 0:
        raise UsageError(f"merge radius gamma*delta must be positive, got {gamma}*{delta}")
    radius = gamma * delta
    nodes, masses = node_masses(tau)
    n = len(A)

    labels = Z.labels(nodes)
    if np.any(labels < 0):
        raise OrphanPointsError("tau has mass outside the cells being merged")
    cell_mass = np.bincount(labels, weights=masses, minlength=n)

    hood = GeodesicIndex(A.manifold, nodes).neighbourhood(A.points, radius)
    ball_mass = hood @ masses
    m = float(ball_mass.min())
    if m <= 0.0:
        raise NotDominantError(f"tau not dominant at scale {radius:.6g}")

    # Cells sit in B(y, gamma*delta), so two cells can only meet when their centers are
    # within 2*gamma*delta; counting at that radius bounds how many cells share a ball.
    c = 1.0 / overlap_count(A, 2.0 * radius, A.points)
    threshold = c * m
    in_G = cell_mass >= threshold * (1.0 - 1e-12)

    phi = np.arange(n)
    light = np.flatnonzero(~in_G)
    if light.size:
        rows = hood[light].tocoo()
        phi[light] = _heaviest_cell(rows.row, labels[rows.col], masses[rows.col], light.size, n)

    if not np.all(in_G[phi]):
        raise InvariantViolation("merge target below the mass threshold")

    kept = np.flatnonzero(in_G)
    position = np.full(n, -1, dtype=np.int64)
    position[kept] = np.arange(kept.size)
    phi_G = position[phi]
    G = A.take(kept)
    Y = MergedCells(Z, phi_G, G)

    merged_mass = np.bincount(phi_G[labels], weights=masses, minlength=kept.size)
    if np.any(merged_mass < threshold * (1.0 - 1e-9)):
        raise InvariantViolation("merged cell below the mass threshold")
    hops = np.atleast_1d(geodesic_distance(A.manifold, A.points, G.points[phi_G]))
    if np.any(hops > closed_radius(2.0 * radius)):
        raise InvariantViolation("merged cell escapes B(y, 3 * gamma * delta)")

    logger.debug("merge: %d -> %d cells (c=%.3g, m=%.3g)", n, kept.size, c, m)
    return MergeResult(G=G, kept=kept, phi=phi_G, Y=Y, c=c, m=m)


def _heaviest_cell(rows, cells, weights, n_rows: int, n_cells: int) -> np.ndarray:
    """Per row, the cell with the largest summed weight; ties go to the lowest cell index."""
    key = rows.astype(np.int64) * n_cells + cells
    unique, inverse = np.unique(key, return_inverse=True)
    sums = np.bincount(inverse.ravel(), weights=weights)
    row, cell = unique // n_cells, unique % n_cells
    order = np.lexsort((cell, -sums, row))
    row, cell = row[order], cell[order]
    first = np.ones(row.size, dtype=bool)
    first[1:] = row[1:] != row[:-1]
    out = np.full(n_rows, -1, dtype=np.int64)
    out[row[first]] = cell[first]
    return out
