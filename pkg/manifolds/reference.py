"""
High-accuracy reference quadrature for integrals against mu.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from models.errors import ReferenceQuadratureError, UsageError
from models.pydantic_models import ManifoldKind

from .geometry import TWO_PI, canonicalize
from .model import ManifoldModel
from .spectral import eigen_system

GRAM_CHECK_DIM = 600
CHUNK = 8192
GRAM_CHECK_TOL = 1e-11


@dataclass(frozen=True, eq=False)
class ReferenceQuadrature:
    """
    Nodes and nonnegative weights integrating every product phi_j phi_k with
    ell_j, ell_k <= exact_degree exactly.
    """

    manifold: ManifoldModel
    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: float

    def integrate(self, values: np.ndarray):
        """Integral of sampled values (first axis runs over nodes)."""
        return self.weights @ values


def _circle_rule(degree: int):
    n = degree + 1
    nodes = TWO_PI * np.arange(n) / n
    return nodes[:, None], np.full(n, 1.0 / n)


def _sphere_rule(degree: int):
    n_lat, n_lon = degree // 2 + 1, degree + 1
    x, w = np.polynomial.legendre.leggauss(n_lat)
    theta = np.arccos(x)
    phi = TWO_PI * np.arange(n_lon) / n_lon
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    weights = np.repeat(w / 2.0, n_lon) / n_lon
    return np.stack([tt.ravel(), pp.ravel()], axis=1), weights


def _torus_rule(degree: int):
    n = degree + 1
    axis = TWO_PI * np.arange(n) / n
    aa, bb = np.meshgrid(axis, axis, indexing="ij")
    return np.stack([aa.ravel(), bb.ravel()], axis=1), np.full(n * n, 1.0 / (n * n))


def check_exactness(rule: ReferenceQuadrature) -> float:
    """
    Re-check weight sum and the discrete Gram identity.

    Returns:
        largest Gram deviation found

    Raises:
        ReferenceQuadratureError: when either check fails
    """
    total = float(rule.weights.sum())
    if abs(total - 1.0) > 1e-12:
        raise ReferenceQuadratureError(f"Reference weights sum to {total}, not 1")

    basis = eigen_system(rule.manifold, rule.exact_degree)
    if basis.dim > GRAM_CHECK_DIM:
        basis = basis.head(GRAM_CHECK_DIM)
    gram = np.zeros((basis.dim, basis.dim))
    for start in range(0, rule.nodes.shape[0], CHUNK):
        values = basis.evaluate(rule.nodes[start:start + CHUNK])
        gram += values.T @ (rule.weights[start:start + CHUNK, None] * values)
    deviation = float(np.max(np.abs(gram - np.eye(basis.dim))))
    if deviation > GRAM_CHECK_TOL:
        raise ReferenceQuadratureError(
            f"Reference rule for {rule.manifold.kind.value} misses exactness: Gram deviation {deviation:.3e}"
        )
    return deviation


@lru_cache(maxsize=32)
def reference_quadrature(m: ManifoldModel, L: float) -> ReferenceQuadrature:
    """
    Rule exact for products of two elements of Pi_{2L+2}.

    Args:
        m: the manifold
        L: level, at least 1

    Returns:
        ReferenceQuadrature with exact_degree = 2*ceil(L) + 2
    """
    if L < 1:
        raise UsageError(f"reference_quadrature needs L >= 1, got {L}")

    # Trigonometric (circle, torus) or polynomial (sphere) degree integrated exactly
    degree = 4 * int(np.ceil(L)) + 4
    builders = {
        ManifoldKind.CIRCLE: _circle_rule,
        ManifoldKind.SPHERE2: _sphere_rule,
        ManifoldKind.TORUS2: _torus_rule,
    }
    nodes, weights = builders[m.kind](degree)
    rule = ReferenceQuadrature(
        manifold=m,
        nodes=canonicalize(m, nodes),
        weights=weights,
        exact_degree=float(degree // 2),
    )
    check_exactness(rule)
    return rule
