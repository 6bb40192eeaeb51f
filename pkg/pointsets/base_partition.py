"""
Stage-1 cells Z_{y,1}: first-index assignment to balls of radius delta around G1.
"""

import numpy as np

from manifolds import ProbeGrid
from models.errors import OrphanPointsError, UsageError

from .cells import FirstBallCells
from .point_set import PointSet


def base_partition(G1: PointSet, delta: float, probe: ProbeGrid = None) -> FirstBallCells:
    """
    Build the stage-1 membership predicate.

    Args:
        G1: ordered centers
        delta: ball radius, must be >= delta(G1) for the cells to cover the manifold
        probe: optional grid on which coverage is verified

    Returns:
        FirstBallCells predicate

    Raises:
        OrphanPointsError: probe points outside every ball
    """
    if len(G1) == 0:
        raise UsageError("base_partition needs at least one center")
    if delta <= 0:
        raise UsageError(f"base_partition radius must be positive, got {delta}")

    cells = FirstBallCells(G1, delta)
    if probe is not None:
        orphans = int(np.count_nonzero(cells.labels(probe.nodes) < 0))
        if orphans:
            raise OrphanPointsError(
                f"{orphans} probe points lie farther than delta={delta:.6g} from every center"
            )
    return cells
