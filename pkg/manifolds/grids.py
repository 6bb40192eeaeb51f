"""
Near-uniform probe grids with a certified mesh bound and exact mu-cell weights.
"""

from dataclasses import dataclass

import numpy as np

from models.errors import UsageError
from models.pydantic_models import ManifoldKind

from .geometry import TWO_PI, canonicalize
from .model import ManifoldModel


@dataclass(frozen=True, eq=False)
class ProbeGrid:
    """
    Grid points whose mesh norm over the manifold is at most `resolution`.

    weights[i] is the mu-measure of the grid cell represented by nodes[i]; they sum to 1,
    so the grid doubles as a discretization of mu.
    """

    manifold: ManifoldModel
    nodes: np.ndarray
    weights: np.ndarray
    resolution: float

    def __len__(self) -> int:
        return self.nodes.shape[0]

    def describe(self) -> str:
        return f"{self.manifold.kind.value} probe grid, {len(self)} points, resolution {self.resolution:.3e}"


def probe_grid(m: ManifoldModel, resolution: float) -> ProbeGrid:
    """
    Build a grid with mesh norm at most `resolution`.

    Circle: equispaced. Torus: square tensor grid. Sphere: colatitude bands of width
    <= resolution, each ring holding enough equispaced points that the arc between
    neighbours is <= resolution.
    """
    if resolution <= 0:
        raise UsageError(f"Grid resolution must be positive, got {resolution}")

    if m.kind is ManifoldKind.CIRCLE:
        n = max(2, int(np.ceil(np.pi / resolution)))
        nodes = (TWO_PI * np.arange(n) / n)[:, None]
        return ProbeGrid(m, canonicalize(m, nodes), np.full(n, 1.0 / n), resolution)

    if m.kind is ManifoldKind.TORUS2:
        n = max(2, int(np.ceil(np.pi * np.sqrt(2.0) / resolution)))
        axis = TWO_PI * np.arange(n) / n
        aa, bb = np.meshgrid(axis, axis, indexing="ij")
        nodes = np.stack([aa.ravel(), bb.ravel()], axis=1)
        return ProbeGrid(m, canonicalize(m, nodes), np.full(n * n, 1.0 / (n * n)), resolution)

    n_bands = max(2, int(np.ceil(np.pi / resolution)))
    width = np.pi / n_bands
    rings, weights = [], []
    for i in range(n_bands):
        lo, hi = i * width, (i + 1) * width
        widest = 1.0 if lo <= np.pi / 2 <= hi else max(np.sin(lo), np.sin(hi))
        count = max(1, int(np.ceil(TWO_PI * widest / resolution)))
        offset = 0.5 * (i % 2)
        phi = TWO_PI * (np.arange(count) + offset) / count
        rings.append(np.stack([np.full(count, (i + 0.5) * width), phi], axis=1))
        area = (np.cos(lo) - np.cos(hi)) / 2.0
        weights.append(np.full(count, area / count))
    nodes = np.concatenate(rings)
    return ProbeGrid(m, canonicalize(m, nodes), np.concatenate(weights), resolution)


def audit_grid(m: ManifoldModel, n_points: int) -> ProbeGrid:
    """A probe grid with roughly n_points points."""
    if n_points < 2:
        raise UsageError(f"Audit grid needs at least 2 points, got {n_points}")
    if m.kind is ManifoldKind.CIRCLE:
        return probe_grid(m, np.pi / n_points)
    if m.kind is ManifoldKind.TORUS2:
        return probe_grid(m, np.pi * np.sqrt(2.0) / np.floor(np.sqrt(n_points)))
    return probe_grid(m, np.sqrt(4.0 * np.pi / n_points))
