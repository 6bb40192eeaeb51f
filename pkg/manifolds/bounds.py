"""
Fitted ball-growth constants: lower band of mu(B(x,r))/r^alpha and the doubling constant.
"""

import logging

import numpy as np

from models.pydantic_models import BallBand

from .geometry import ball_measure, random_points
from .model import ManifoldModel

logger = logging.getLogger(__name__)

# Doubling constants above this are reported as suspicious
DOUBLING_WARN = 16.0


def fit_doubling_constant(m: ManifoldModel, samples: int = 200, seed: int = 0) -> float:
    """
    Smallest c with mu(B(x,R)) <= c (R/r)^alpha mu(B(x,r)) over sampled x, 0 < r <= 1 and
    r < R <= diameter.
    """
    rng = np.random.default_rng(seed)
    centers = random_points(m, samples, rng)
    r = rng.uniform(1e-6, 1.0, size=samples)
    R = r + rng.uniform(0.0, 1.0, size=samples) * (m.diameter - r)
    ratios = np.array([
        ball_measure(m, x, Ri) / ((Ri / ri) ** m.alpha * ball_measure(m, x, ri))
        for x, ri, Ri in zip(centers, r, R)
    ])
    c = float(ratios.max())
    if c > DOUBLING_WARN:
        logger.warning("⚠️ Doubling constant %.3g on %s exceeds %g", c, m.kind.value, DOUBLING_WARN)
    return c


def fit_ball_band(m: ManifoldModel, samples: int = 200, seed: int = 0) -> BallBand:
    """
    Sample (x, r) with r in (0, 1] and record the band of mu(B(x,r)) / r^alpha,
    together with the doubling constant.
    """
    rng = np.random.default_rng(seed)
    centers = random_points(m, samples, rng)
    r = rng.uniform(1e-6, 1.0, size=samples)
    ratios = np.array([ball_measure(m, x, ri) / ri ** m.alpha for x, ri in zip(centers, r)])
    return BallBand(
        c_lo=float(ratios.min()),
        c_hi=float(ratios.max()),
        doubling=fit_doubling_constant(m, samples, seed + 1),
        samples=samples,
    )
