"""
Cell-wise mu-integrals over a partition.

On the circle every cell is a finite union of arcs: the arc endpoints are located by
bisection on the membership predicate and each arc is integrated with Gauss-Legendre.
Elsewhere the partition's mu-grid is used, or the sample rule of a density measure.
"""

import numpy as np

from models.pydantic_models import ManifoldKind

TWO_PI = 2.0 * np.pi
SCAN_PER_CELL = 64
BISECTION_STEPS = 60
GAUSS_NODES = 24


def _arcs(partition):
    """(start, end, label) of the arcs of constant cell label, covering [0, 2 pi)."""
    n = max(SCAN_PER_CELL * partition.n_cells, 8192)
    theta = TWO_PI * np.arange(n) / n
    labels = partition.cell_of(theta)
    change = np.flatnonzero(labels != np.roll(labels, -1))
    if change.size == 0:
        return np.array([0.0]), np.array([TWO_PI]), labels[:1]

    lo, hi = theta[change], theta[change] + TWO_PI / n
    left = labels[change]
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        same = partition.cell_of(np.mod(mid, TWO_PI)) == left
        lo, hi = np.where(same, mid, lo), np.where(same, hi, mid)
    cuts = 0.5 * (lo + hi)
    starts = cuts
    ends = np.roll(cuts, -1)
    ends[-1] += TWO_PI
    arc_labels = labels[(change + 1) % n]
    return starts, ends, arc_labels


def _circle_integrals(partition, f) -> np.ndarray:
    starts, ends, labels = _arcs(partition)
    x, w = np.polynomial.legendre.leggauss(GAUSS_NODES)
    half = 0.5 * (ends - starts)
    nodes = (0.5 * (ends + starts))[:, None] + half[:, None] * x[None, :]
    values = f(np.mod(nodes.ravel(), TWO_PI)[:, None]).reshape(nodes.shape)
    per_arc = (values @ w) * half / TWO_PI
    return np.bincount(labels, weights=per_arc, minlength=partition.n_cells)


def cell_mu_integrals(partition, f, nu=None) -> np.ndarray:
    """
    integral over Y_k of f d mu, for every cell k.

    Args:
        partition: the partition
        f: callable on an (n, coord_dim) point array
        nu: when a density measure, its sample rule is used as the mu-discretization
    """
    if nu is not None and hasattr(nu, "sample_weights"):
        labels = partition.cell_of(nu.sample_nodes)
        return np.bincount(labels, weights=nu.sample_weights * f(nu.sample_nodes),
                           minlength=partition.n_cells)
    if partition.manifold.kind is ManifoldKind.CIRCLE:
        return _circle_integrals(partition, f)
    grid = partition.mu_grid
    return np.bincount(partition.mu_labels, weights=grid.weights * f(grid.nodes),
                       minlength=partition.n_cells)


def cell_nu_integrals(partition, f, nu) -> np.ndarray:
    """integral over Y_k of f d|nu|, for every cell k."""
    labels = partition.cell_of(nu.nodes)
    covered = labels >= 0
    return np.bincount(labels[covered], weights=(nu.abs_masses * f(nu.nodes))[covered],
                       minlength=partition.n_cells)
