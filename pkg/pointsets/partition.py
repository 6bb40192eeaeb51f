"""
Partition of the manifold into cells Y_k with chosen points x_k in Y_k.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import numpy as np

from manifolds import ManifoldModel, ProbeGrid, audit_grid, geodesic_distance
from models.errors import InvariantViolation
from models.pydantic_models import PartitionAudit

from .cells import CellPredicate, FirstBallCells, MergedCells, NearestCells
from .mesh_norm import mesh_norm
from .min_separation import min_separation
from .point_set import PointSet

CONTAINMENT_FACTOR = 81.0


@dataclass(frozen=True, eq=False)
class Partition:
    """
    Replayable partition: stage-1 rule over base_centers, then one index map per merge.

    Attributes:
        d: construction scale
        base_rule: "first_ball" (smallest index within base_radius) or "nearest"
        base_centers: stage-1 centers G1
        base_radius: stage-1 ball radius
        merge_maps: phi of every merge, from positions in stage k to positions in stage k+1
        stage_members: kept positions of every merge, relative to the previous stage
        final_centers: x_k, one per final cell
        mu_grid: grid discretizing mu, used for cell_mu
        cell_mu: mu(Y_k) on mu_grid
        cell_nu: |nu|(Y_k) over the nodes of nu
    """

    manifold: ManifoldModel
    d: float
    base_rule: str
    base_centers: PointSet
    base_radius: float
    merge_maps: Tuple[np.ndarray, ...]
    stage_members: Tuple[np.ndarray, ...]
    final_centers: PointSet
    mu_grid: ProbeGrid
    cell_mu: np.ndarray
    cell_nu: np.ndarray

    @property
    def n_cells(self) -> int:
        return len(self.final_centers)

    @cached_property
    def cells(self) -> CellPredicate:
        if self.base_rule == "nearest":
            predicate = NearestCells(self.base_centers)
        else:
            predicate = FirstBallCells(self.base_centers, self.base_radius)
        centers = self.base_centers
        for phi, members in zip(self.merge_maps, self.stage_members):
            centers = centers.take(members)
            predicate = MergedCells(predicate, phi, centers)
        return predicate

    def cell_of(self, points) -> np.ndarray:
        """Final cell index of every point, -1 where uncovered."""
        return self.cells.labels(points)

    @cached_property
    def mu_labels(self) -> np.ndarray:
        return self.cell_of(self.mu_grid.nodes)


def nu_cell_masses(partition: Partition, nu) -> np.ndarray:
    """|nu|(Y_k) for every cell."""
    labels = partition.cell_of(nu.nodes)
    covered = labels >= 0
    return np.bincount(labels[covered], weights=nu.abs_masses[covered], minlength=partition.n_cells)


def audit_partition(partition: Partition, nu, audit: ProbeGrid = None, n_audit: int = 10_000) -> PartitionAudit:
    """
    Check cover, x_k in Y_k, containment in B(x_k, 81 d), the mu-band, |nu|(Y_k) > 0 and
    q(C)/2 <= delta(C) <= 81 d on an audit grid.
    """
    from measures import ball_masses

    m = partition.manifold
    d = partition.d
    audit = audit or audit_grid(m, n_audit)

    labels = partition.cell_of(audit.nodes)
    covered = bool(np.all(labels >= 0))
    own = partition.cell_of(partition.final_centers.points)
    centers_in_cells = bool(np.array_equal(own, np.arange(partition.n_cells)))

    inside = labels >= 0
    reach = np.atleast_1d(geodesic_distance(m, audit.nodes[inside], partition.final_centers.points[labels[inside]]))
    containment = float(reach.max() / d) if reach.size else 0.0

    scaled = partition.cell_mu / d ** m.alpha
    b_lo, b_hi = float(scaled.min()), float(scaled.max())

    cell_nu = partition.cell_nu
    local = ball_masses(nu, partition.base_centers.points, d / 4.0)
    nu_lower = float(cell_nu.min() / local.min()) if local.min() > 0 else float("inf")

    C = partition.final_centers
    delta = mesh_norm(C, audit)
    q = min_separation(C) if len(C) >= 2 else 2.0 * delta
    separation_ok = q / 2.0 <= delta + audit.resolution and delta <= CONTAINMENT_FACTOR * d

    ok = (covered and centers_in_cells and containment <= CONTAINMENT_FACTOR and b_lo > 0
          and bool(np.all(cell_nu > 0)) and separation_ok)
    return PartitionAudit(
        n_cells=partition.n_cells,
        n_audit_points=len(audit),
        covered=covered,
        centers_in_cells=centers_in_cells,
        containment_ratio=containment,
        containment_bound=CONTAINMENT_FACTOR,
        b_lo=b_lo,
        b_hi=b_hi,
        nu_positive=bool(np.all(cell_nu > 0)),
        nu_lower_constant=nu_lower,
        separation_half=q / 2.0,
        mesh_norm=delta,
        ok=ok,
    )


def assert_partition(result: PartitionAudit) -> PartitionAudit:
    """Raise InvariantViolation naming the failed checks."""
    if result.ok:
        return result
    failed = [name for name, good in [
        ("cover", result.covered),
        ("x_k in Y_k", result.centers_in_cells),
        ("containment", result.containment_ratio <= result.containment_bound),
        ("mu band", result.b_lo > 0),
        ("|nu|(Y_k) > 0", result.nu_positive),
        ("q/2 <= delta <= 81d", result.separation_half <= result.mesh_norm + 1e-12),
    ] if not good]
    raise InvariantViolation(f"Partition audit failed: {', '.join(failed) or 'separation bounds'}")
