"""
The concrete manifolds: circle, 2-sphere and flat 2-torus.
"""

from functools import lru_cache

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from models.errors import UsageError
from models.pydantic_models import Kappa, ManifoldKind


class ManifoldModel(BaseModel):
    """A compact model manifold with its normalized measure and constants."""

    model_config = ConfigDict(frozen=True)

    kind: ManifoldKind
    alpha: int = Field(description="Dimension exponent in the ball-growth bound")
    diameter: float = Field(description="Largest geodesic distance")
    coord_dim: int = Field(description="Number of intrinsic coordinates per point")
    kappa: Kappa

    def with_fitted(self, **constants) -> "ManifoldModel":
        """Return a copy with fitted kappa2..kappa4 filled in."""
        return self.model_copy(update={"kappa": self.kappa.model_copy(update=constants)})


@lru_cache(maxsize=None)
def get_manifold(kind) -> ManifoldModel:
    """
    Build the model for a manifold kind.

    Args:
        kind: ManifoldKind or its string value ("circle", "sphere2", "torus2")

    Returns:
        ManifoldModel with the analytic kappa1
    """
    try:
        kind = ManifoldKind(kind)
    except ValueError:
        raise UsageError(f"Unknown manifold '{kind}'")

    if kind is ManifoldKind.CIRCLE:
        return ManifoldModel(kind=kind, alpha=1, diameter=np.pi, coord_dim=1,
                             kappa=Kappa(kappa1=1.0 / np.pi))
    if kind is ManifoldKind.SPHERE2:
        # (1 - cos r) / 2 <= r^2 / 4
        return ManifoldModel(kind=kind, alpha=2, diameter=np.pi, coord_dim=2,
                             kappa=Kappa(kappa1=0.25))
    return ManifoldModel(kind=kind, alpha=2, diameter=np.pi * np.sqrt(2.0), coord_dim=2,
                         kappa=Kappa(kappa1=1.0 / (4.0 * np.pi)))
