"""
Total variation, ball masses and the regularity / dominance certificates.
"""

import logging
from typing import Optional

import numpy as np

from manifolds import ProbeGrid, as_points, ball_measure, probe_grid, random_points
from models.errors import EmptySupportError, UsageError
from models.pydantic_models import RegularityCertificate

from .signed_measure import SignedMeasure

logger = logging.getLogger(__name__)

CHUNK = 4096


def total_variation(nu: SignedMeasure) -> float:
    """|nu|(X)."""
    return float(nu.abs_masses.sum())


def ball_masses(nu: SignedMeasure, centers, r: float) -> np.ndarray:
    """|nu|(B(x, r)) for every center x (closed balls)."""
    if r < 0:
        raise UsageError(f"Ball radius must be >= 0, got {r}")
    pts = as_points(nu.manifold, centers)
    if nu.nodes.shape[0] == 0:
        return np.zeros(pts.shape[0])
    out = np.empty(pts.shape[0])
    for start in range(0, pts.shape[0], CHUNK):
        block = nu.index.neighbourhood(pts[start:start + CHUNK], r)
        out[start:start + CHUNK] = block @ nu.abs_masses
    return out


def ball_mass(nu: SignedMeasure, x, r: float) -> float:
    """|nu|(B(x, r)) for a single center."""
    return float(ball_masses(nu, x, r)[0])


def support_mesh_norm(nu: SignedMeasure, probe: Optional[ProbeGrid] = None, resolution: Optional[float] = None) -> float:
    """
    delta(supp nu): largest distance from a probe point to the support, accurate to the
    probe resolution.
    """
    if nu.is_zero:
        raise EmptySupportError("empty support")
    if probe is None:
        probe = probe_grid(nu.manifold, resolution or nu.manifold.diameter / 512)
    dist, _ = nu.support_index.nearest(probe.nodes)
    return float(dist.max())


def _centers(nu: SignedMeasure, d: float, centers):
    if centers is None:
        grid = probe_grid(nu.manifold, d / 8.0)
        return grid.nodes, grid.describe(), grid.resolution
    if isinstance(centers, ProbeGrid):
        return centers.nodes, centers.describe(), centers.resolution
    pts = as_points(nu.manifold, centers)
    return pts, f"{pts.shape[0]} supplied centers", None


def _scaled_masses(nu: SignedMeasure, d: float, centers):
    if d <= 0:
        raise UsageError(f"Scale d must be positive, got {d}")
    pts, source, resolution = _centers(nu, d, centers)
    return ball_masses(nu, pts, d) / d ** nu.manifold.alpha, source, resolution, pts.shape[0]


def regularity_norm(nu: SignedMeasure, d: float, centers=None) -> RegularityCertificate:
    """
    Estimate |||nu|||_{R,d} = sup_x |nu|(B(x,d)) / d^alpha over probe centers.

    Args:
        nu: the measure
        d: scale, > 0
        centers: ProbeGrid, point array, or None for a grid at resolution d/8
    """
    scaled, source, resolution, count = _scaled_masses(nu, d, centers)
    return RegularityCertificate(
        d=d,
        R_norm=float(scaled.max()) if count else 0.0,
        n_centers=count,
        center_source=source,
        grid_resolution=resolution,
    )


def dominance_norm(nu: SignedMeasure, d: float, centers=None) -> RegularityCertificate:
    """
    Estimate |||nu|||_{D,d} = (inf_x |nu|(B(x,d)) / d^alpha)^-1; infinite when some probed
    ball carries no mass.
    """
    scaled, source, resolution, count = _scaled_masses(nu, d, centers)
    low = float(scaled.min()) if count else 0.0
    infinite = low <= 0.0
    if infinite:
        logger.info("⚠️ Empty probe ball at d=%.4g: dominance norm is infinite", d)
    return RegularityCertificate(
        d=d,
        D_norm=float("inf") if infinite else 1.0 / low,
        dominance_infinite=infinite,
        n_centers=count,
        center_source=source,
        grid_resolution=resolution,
    )


def reconciliation_constant(nu: SignedMeasure, d: float, samples: int = 100, seed: int = 0,
                            centers=None) -> float:
    """
    Smallest c with |nu|(B(x,r)) <= c R_norm mu(B(x, r+d)) over random (x, r).
    """
    R = regularity_norm(nu, d, centers).R_norm
    if R == 0.0:
        return 0.0
    rng = np.random.default_rng(seed)
    xs = random_points(nu.manifold, samples, rng)
    rs = rng.uniform(0.0, nu.manifold.diameter, size=samples)
    ratios = [ball_mass(nu, x, r) / (R * ball_measure(nu.manifold, x, r + d)) for x, r in zip(xs, rs)]
    return float(max(ratios))
