"""
Signed measures in node form.

Every variant reduces to nodes with signed masses: atoms are their own nodes, density
and ball-average measures are sampled on a quadrature or probe grid and carry
mass = node weight * density value.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from manifolds import GeodesicIndex, ManifoldModel, as_points, ball_measure
from models.errors import UsageError

DENSITY_SUPPORT_TOL = 1e-12


@dataclass(frozen=True, eq=False, kw_only=True)
class SignedMeasure(ABC):
    manifold: ManifoldModel
    name: str = "measure"

    @property
    @abstractmethod
    def nodes(self) -> np.ndarray:
        """Points carrying mass, shape (n, coord_dim)."""

    @property
    @abstractmethod
    def masses(self) -> np.ndarray:
        """Signed mass at each node."""

    @property
    @abstractmethod
    def support_mask(self) -> np.ndarray:
        """Nodes belonging to supp(nu)."""

    @property
    def variant(self) -> str:
        return type(self).__name__.replace("Measure", "").lower()

    @cached_property
    def abs_masses(self) -> np.ndarray:
        return np.abs(self.masses)

    @cached_property
    def support(self) -> np.ndarray:
        return self.nodes[self.support_mask]

    @cached_property
    def index(self) -> GeodesicIndex:
        return GeodesicIndex(self.manifold, self.nodes)

    @cached_property
    def support_index(self) -> GeodesicIndex:
        return GeodesicIndex(self.manifold, self.support)

    @property
    def is_zero(self) -> bool:
        return not np.any(self.support_mask)


@dataclass(frozen=True, eq=False, kw_only=True)
class AtomicMeasure(SignedMeasure):
    """Finitely many atoms with real weights."""

    points: np.ndarray
    weights: np.ndarray
    name: str = "atomic"

    def __post_init__(self):
        pts = as_points(self.manifold, self.points) if len(self.points) else np.zeros((0, self.manifold.coord_dim))
        w = np.asarray(self.weights, dtype=float).ravel()
        if pts.shape[0] != w.shape[0]:
            raise UsageError(f"{pts.shape[0]} atoms but {w.shape[0]} weights")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def nodes(self) -> np.ndarray:
        return self.points

    @property
    def masses(self) -> np.ndarray:
        return self.weights

    @cached_property
    def support_mask(self) -> np.ndarray:
        return self.weights != 0.0


@dataclass(frozen=True, eq=False, kw_only=True)
class DensityMeasure(SignedMeasure):
    """
    w d mu with w sampled on a rule (nodes, sample_weights).

    Ball integrals reuse the sample nodes.
    """

    sample_nodes: np.ndarray
    sample_weights: np.ndarray
    density: np.ndarray
    name: str = "density"

    def __post_init__(self):
        pts = as_points(self.manifold, self.sample_nodes)
        w = np.asarray(self.sample_weights, dtype=float).ravel()
        dens = np.asarray(self.density, dtype=float).ravel()
        if not (pts.shape[0] == w.shape[0] == dens.shape[0]):
            raise UsageError("Density samples, weights and nodes differ in length")
        object.__setattr__(self, "sample_nodes", pts)
        object.__setattr__(self, "sample_weights", w)
        object.__setattr__(self, "density", dens)

    @classmethod
    def on_rule(cls, rule, density, name: str = "density") -> "DensityMeasure":
        """Density sampled on any object exposing manifold, nodes and weights."""
        return cls(manifold=rule.manifold, sample_nodes=rule.nodes, sample_weights=rule.weights,
                   density=density, name=name)

    @property
    def nodes(self) -> np.ndarray:
        return self.sample_nodes

    @cached_property
    def masses(self) -> np.ndarray:
        return self.sample_weights * self.density

    @cached_property
    def support_mask(self) -> np.ndarray:
        return np.abs(self.density) > DENSITY_SUPPORT_TOL


@dataclass(frozen=True, eq=False, kw_only=True)
class BallAverageMeasure(DensityMeasure):
    """Density sum_y w_y 1_{B(y, r_y)} sampled on a rule."""

    centers: np.ndarray = field(default=None)
    radii: np.ndarray = field(default=None)
    ball_weights: np.ndarray = field(default=None)
    name: str = "ball_average"

    @classmethod
    def build(cls, rule, centers, radii, ball_weights=None, name: str = "ball_average"):
        m = rule.manifold
        c = as_points(m, centers)
        r = np.broadcast_to(np.asarray(radii, dtype=float), (c.shape[0],)).copy()
        w = np.ones(c.shape[0]) if ball_weights is None else np.asarray(ball_weights, dtype=float)
        index = GeodesicIndex(m, rule.nodes)
        density = np.zeros(len(index))
        for center, radius, weight in zip(c, r, w):
            density[index.ball_lists(center, radius)[0]] += weight
        return cls(manifold=m, sample_nodes=rule.nodes, sample_weights=rule.weights, density=density,
                   centers=c, radii=r, ball_weights=w, name=name)

    def exact_total(self) -> float:
        """sum_y |w_y| mu(B(y, r_y)), valid when the balls are disjoint."""
        return float(np.sum(np.abs(self.ball_weights) * ball_measure(self.manifold, self.centers[0], self.radii)))


def zero_measure(m: ManifoldModel) -> AtomicMeasure:
    return AtomicMeasure(manifold=m, points=np.zeros((0, m.coord_dim)), weights=np.zeros(0), name="zero")
