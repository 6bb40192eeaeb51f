"""
Point families on the circle: equispaced, jittered and arc-confined.
"""

import numpy as np

from manifolds import get_manifold
from models.errors import UsageError
from models.pydantic_models import ManifoldKind

from .point_set import PointSet

TWO_PI = 2.0 * np.pi


def equispaced_circle(n: int, offset: float = 0.0) -> PointSet:
    """theta_k = offset + 2 pi k / n."""
    if n < 1:
        raise UsageError(f"need at least one point, got n={n}")
    theta = offset + TWO_PI * np.arange(n) / n
    return PointSet(get_manifold(ManifoldKind.CIRCLE), theta[:, None])


def jittered_circle(n: int, jitter: float = 0.3, seed: int = 0) -> PointSet:
    """
    Equispaced points each moved by a uniform offset of at most jitter * (2 pi / n).

    Args:
        jitter: fraction of the gap, in [0, 0.5)
    """
    if not 0.0 <= jitter < 0.5:
        raise UsageError(f"jitter must lie in [0, 0.5), got {jitter}")
    rng = np.random.default_rng(seed)
    gap = TWO_PI / n
    theta = gap * np.arange(n) + rng.uniform(-jitter, jitter, size=n) * gap
    return PointSet(get_manifold(ManifoldKind.CIRCLE), theta[:, None])


def arc_circle(n: int, start: float = 0.0, length: float = np.pi) -> PointSet:
    """n equispaced points on the closed arc [start, start + length]."""
    if n < 2 or not 0.0 < length < TWO_PI:
        raise UsageError(f"arc needs n >= 2 and 0 < length < 2 pi, got n={n}, length={length}")
    theta = start + length * np.arange(n) / (n - 1)
    return PointSet(get_manifold(ManifoldKind.CIRCLE), theta[:, None])
