"""
Partition adapted to a measure nu at scale d: separated centers, then three merges.
"""

import logging
from dataclasses import replace

import numpy as np

from manifolds import ProbeGrid, probe_grid
from models.errors import ScaleOutOfRangeError, SupportTooSparseError, UsageError

from .base_partition import base_partition
from .max_separated_subset import max_separated_subset
from .merge_partition import merge_partition
from .mesh_norm import mesh_norm
from .partition import Partition, nu_cell_masses
from .point_set import PointSet

logger = logging.getLogger(__name__)

MAX_SCALE = 1.0 / 81.0


def build_mz_partition(nu, d: float, grid: ProbeGrid = None, relax_d: bool = False,
                       grid_factor: float = 4.0) -> Partition:
    """
    Build the partition {Y_k} with points x_k in Y_k for the measure nu at scale d.

    Pipeline: G1 = maximal d/2-separated subset of supp(nu); first-ball cells of radius
    delta(G1); merge with tau = mu; merge with tau = |nu|; merge with unit atoms on the
    surviving centers; x_k is the first surviving center falling in cell k.

    Args:
        nu: the measure
        d: construction scale, delta(supp nu) < d <= 1/81
        grid: grid discretizing mu (defaults to a probe grid at d / grid_factor)
        relax_d: allow d > 1/81 with a warning
        grid_factor: ratio of d to the default grid resolution

    Returns:
        Partition

    Raises:
        ScaleOutOfRangeError: d <= 0, or d > 1/81 without relax_d
        SupportTooSparseError: delta(supp nu) >= d
    """
    from measures import support_mesh_norm

    if nu.is_zero:
        raise UsageError("build_mz_partition needs a nonzero measure")
    if d <= 0:
        raise ScaleOutOfRangeError(f"Partition scale must be positive, got {d}")
    if d > MAX_SCALE:
        if not relax_d:
            raise ScaleOutOfRangeError(f"Partition scale d={d:.6g} exceeds 1/81 (use relax_d)")
        logger.warning("⚠️ Partition scale d=%.4g above 1/81, bound relaxed", d)

    m = nu.manifold
    mu_grid = grid or probe_grid(m, d / grid_factor)

    support_gap = support_mesh_norm(nu, probe=mu_grid)
    if support_gap >= d:
        raise SupportTooSparseError(
            f"support too sparse: delta(supp nu) ~ {support_gap:.4g} >= d = {d:.4g}"
        )

    G1 = max_separated_subset(PointSet(m, nu.support), d / 2.0)
    r1 = mesh_norm(G1, mu_grid) + mu_grid.resolution
    Z1 = base_partition(G1, r1)

    by_mu = merge_partition(G1, Z1, mu_grid, 1.0, r1)
    by_nu = merge_partition(by_mu.G, by_mu.Y, nu, 1.0, 3.0 * r1)
    G3 = by_nu.G
    atoms = (G3.points, np.ones(len(G3)))
    by_atoms = merge_partition(G3, by_nu.Y, atoms, 1.0, 9.0 * r1)

    final_labels = by_atoms.Y.labels(G3.points)
    _, first = np.unique(final_labels, return_index=True)
    final_centers = G3.take(first)

    partial = Partition(
        manifold=m,
        d=d,
        base_rule="first_ball",
        base_centers=G1,
        base_radius=r1,
        merge_maps=(by_mu.phi, by_nu.phi, by_atoms.phi),
        stage_members=(by_mu.kept, by_nu.kept, by_atoms.kept),
        final_centers=final_centers,
        mu_grid=mu_grid,
        cell_mu=np.zeros(len(final_centers)),
        cell_nu=np.zeros(len(final_centers)),
    )
    cell_mu = np.bincount(partial.mu_labels, weights=mu_grid.weights, minlength=partial.n_cells)
    partition = replace(partial, cell_mu=cell_mu, cell_nu=nu_cell_masses(partial, nu))

    logger.info(
        "✅ Partition at d=%.4g: |G1|=%d -> %d -> %d -> %d cells",
        d, len(G1), len(by_mu.G), len(G3), partition.n_cells,
    )
    return partition
