"""
Greedy maximal eps-separated subset.
"""

import numpy as np

from models.errors import UsageError

from .point_set import PointSet

BLOCK = 4096


def max_separated_subset(samples: PointSet, eps: float) -> PointSet:
    """
    Scan samples in input order and keep a point unless a kept point lies within < eps.

    Args:
        samples: candidate points, nonempty
        eps: separation, > 0

    Returns:
        PointSet whose members are pairwise >= eps apart, with every sample < eps from
        some member
    """
    if len(samples) == 0:
        raise UsageError("max_separated_subset needs a nonempty sample set")
    if eps <= 0:
        raise UsageError(f"Separation eps must be positive, got {eps}")

    index = samples.index
    blocked = np.zeros(len(samples), dtype=bool)
    keep = []
    for start in range(0, len(samples), BLOCK):
        stop = min(start + BLOCK, len(samples))
        open_rows = np.flatnonzero(~blocked[start:stop])
        if open_rows.size == 0:
            continue
        # Open ball: points at exactly eps stay eligible
        hood = index.neighbourhood(samples.points[start + open_rows], eps, closed=False)
        for row, offset in enumerate(open_rows):
            i = start + offset
            if blocked[i]:
                continue
            keep.append(i)
            blocked[hood.indices[hood.indptr[row]:hood.indptr[row + 1]]] = True
    return samples.take(keep)
