from .model import ManifoldModel, get_manifold
from .geometry import (
    GeodesicIndex,
    as_points,
    ball_measure,
    canonicalize,
    geodesic_distance,
    pairwise_distances,
    random_points,
)
from .spectral import SpectralBasis, eigen_system
from .reference import ReferenceQuadrature, check_exactness, reference_quadrature
from .grids import ProbeGrid, audit_grid, probe_grid
from .bounds import fit_ball_band, fit_doubling_constant
"""manifolds package exports."""


__all__ = [
    "ManifoldModel",
    "get_manifold",
    "GeodesicIndex",
    "as_points",
    "ball_measure",
    "canonicalize",
    "geodesic_distance",
    "pairwise_distances",
    "random_points",
    "SpectralBasis",
    "eigen_system",
    "ReferenceQuadrature",
    "check_exactness",
    "reference_quadrature",
    "ProbeGrid",
    "audit_grid",
    "probe_grid",
    "fit_ball_band",
    "fit_doubling_constant",
]
