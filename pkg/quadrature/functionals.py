"""
Cell functionals x_k^*: point evaluation at x_k or the |nu|-average over Y_k.
"""

from enum import Enum

import numpy as np
from scipy import sparse

from models.errors import UsageError
from polynomials import basis_for

CHUNK = 8192


class FunctionalKind(str, Enum):
    POINT_EVALUATION = "PointEvaluation"
    CELL_AVERAGE = "CellAverage"


def cell_average_operator(partition, nu) -> sparse.csr_matrix:
    """Sparse (n_cells, n_nodes) matrix of |m_i| / |nu|(Y_k) for node i in cell k."""
    labels = partition.cell_of(nu.nodes)
    keep = (labels >= 0) & nu.support_mask
    cell_nu = np.bincount(labels[keep], weights=nu.abs_masses[keep], minlength=partition.n_cells)
    if np.any(cell_nu <= 0):
        raise UsageError("cell averages need |nu|(Y_k) > 0 in every cell")
    rows = labels[keep]
    cols = np.flatnonzero(keep)
    data = nu.abs_masses[keep] / cell_nu[rows]
    return sparse.csr_matrix((data, (rows, cols)), shape=(partition.n_cells, nu.nodes.shape[0]))


def cell_functional_matrix(partition, nu, basis, L: float, kind=FunctionalKind.CELL_AVERAGE) -> np.ndarray:
    """
    A[j, k] = x_k^*(phi_j) for ell_j <= L.

    Returns:
        array of shape (dim Pi_L, n_cells)
    """
    kind = FunctionalKind(kind)
    sub = basis_for(basis, L)
    if partition.manifold != sub.manifold or partition.manifold != nu.manifold:
        raise UsageError("partition, measure and basis live on different manifolds")
    if kind is FunctionalKind.POINT_EVALUATION:
        return sub.evaluate(partition.final_centers.points).T

    averages = cell_average_operator(partition, nu)
    out = np.zeros((sub.dim, partition.n_cells))
    nodes = nu.nodes
    for start in range(0, nodes.shape[0], CHUNK):
        block = averages[:, start:start + CHUNK]
        if block.nnz:
            out += (block @ sub.evaluate(nodes[start:start + CHUNK])).T
    return out
