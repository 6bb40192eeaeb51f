"""
Mesh norm delta(C, K): largest distance from a point of K to C.
"""

from models.errors import UsageError

from .point_set import PointSet, grid_points


def mesh_norm(C: PointSet, K) -> float:
    """
    Args:
        C: nonempty point set
        K: ProbeGrid, PointSet or point array standing in for the manifold

    Returns:
        max over K of the distance to C (accurate to the grid resolution when K is a grid)
    """
    if len(C) == 0:
        raise UsageError("mesh_norm of an empty point set")
    dist, _ = C.index.nearest(grid_points(K))
    return float(dist.max())
