"""
Overlap count: how many balls B(c, radius), c in C, can contain one point.
"""

from models.errors import UsageError

from .point_set import PointSet, grid_points


def overlap_count(C: PointSet, radius: float, samples) -> int:
    """Max over samples of #{c in C : rho(sample, c) <= radius}."""
    if radius <= 0:
        raise UsageError(f"Overlap radius must be positive, got {radius}")
    if len(C) == 0:
        return 0
    return int(C.index.count_within(grid_points(samples), radius).max())
