"""
One cell per atom: Voronoi cells around the support of an atomic measure.
"""

from dataclasses import replace

import numpy as np

from manifolds import ProbeGrid, probe_grid
from models.errors import UsageError

from .mesh_norm import mesh_norm
from .partition import Partition, nu_cell_masses
from .point_set import PointSet


def trivial_partition(nu, grid: ProbeGrid = None, resolution: float = None) -> Partition:
    """
    Partition whose cells are the nearest-atom cells of supp(nu), with x_k the k-th atom.

    Used for quadrature on sparse atom sets, where every atom carries its own weight.
    The recorded scale d is the mesh norm of the atoms.
    """
    if nu.is_zero:
        raise UsageError("trivial_partition needs a nonzero measure")
    m = nu.manifold
    atoms = PointSet(m, nu.support)
    if grid is None:
        spacing = mesh_norm(atoms, probe_grid(m, m.diameter / 1024))
        grid = probe_grid(m, resolution or max(spacing / 8.0, 1e-4))
    d = mesh_norm(atoms, grid) + grid.resolution

    partial = Partition(
        manifold=m,
        d=d,
        base_rule="nearest",
        base_centers=atoms,
        base_radius=d,
        merge_maps=(),
        stage_members=(),
        final_centers=atoms,
        mu_grid=grid,
        cell_mu=np.zeros(len(atoms)),
        cell_nu=np.zeros(len(atoms)),
    )
    cell_mu = np.bincount(partial.mu_labels, weights=grid.weights, minlength=len(atoms))
    return replace(partial, cell_mu=cell_mu, cell_nu=nu_cell_masses(partial, nu))
