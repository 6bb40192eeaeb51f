"""
Heat kernel K_t(x, y) = sum_k exp(-ell_k^2 t) phi_k(x) phi_k(y), truncated with a
certified tail bound.
"""

import logging

import numpy as np

from manifolds import as_points, eigen_system, reference_quadrature
from models.errors import TruncationError, UsageError
from models.pydantic_models import HeatIntegral, HeatKernelValue, ManifoldKind
from polynomials import basis_for

logger = logging.getLogger(__name__)

MAX_HEAT_DIM = 20_000
TAIL_TERMS = 100_000


def christoffel_upper(m, L):
    """Upper bound for sup_x sum_{ell_k <= L} phi_k(x)^2 (scalar or array L)."""
    L = np.asarray(L, dtype=float)
    if m.kind is ManifoldKind.CIRCLE:
        out = 2.0 * np.floor(L) + 1.0
    elif m.kind is ManifoldKind.SPHERE2:
        out = (np.floor(L) + 1.0) ** 2
    else:
        out = np.pi * (L + np.sqrt(2.0)) ** 2
    return float(out) if out.ndim == 0 else out


def heat_tail_bound(m, t: float, level: int) -> float:
    """sum_{n >= level} exp(-n^2 t) Lambda(n + 1), bounding the terms with ell_k > level."""
    n = np.arange(max(level, 0), max(level, 0) + TAIL_TERMS, dtype=float)
    terms = np.exp(-n ** 2 * t) * christoffel_upper(m, n + 1.0)
    return float(terms.sum())


def heat_level(m, t: float, tol: float) -> int:
    """Smallest integer level whose tail bound is at most tol."""
    if t <= 0:
        raise UsageError(f"Heat kernel time must be positive, got {t}")
    if tol <= 0:
        raise UsageError(f"Heat kernel tolerance must be positive, got {tol}")
    level = 1
    while heat_tail_bound(m, t, level) > tol:
        level = int(np.ceil(level * 1.25)) + 1
        if christoffel_upper(m, level) > MAX_HEAT_DIM:
            raise TruncationError(
                f"Heat kernel at t={t:g} needs more than {MAX_HEAT_DIM} terms for tol={tol:g}"
            )
    # Back off to the smallest sufficient level
    while level > 1 and heat_tail_bound(m, t, level - 1) <= tol:
        level -= 1
    return level


def heat_basis(source, t: float, tol: float = 1e-12):
    """(basis, exp(-ell^2 t) weights, tail bound) for K_t within tol."""
    m = basis_for(source, 1.0).manifold
    level = heat_level(m, t, tol)
    basis = eigen_system(m, float(level))
    return basis, np.exp(-basis.ells ** 2 * t), heat_tail_bound(m, t, level), level


def heat_kernel(source, t: float, x, y, tol: float = 1e-12) -> HeatKernelValue:
    """
    K_t(x, y) for a single pair of points.

    Args:
        source: manifold, manifold kind or basis
        t: time, > 0
        tol: bound on the truncation error

    Raises:
        TruncationError: tol needs more basis terms than available
    """
    basis, w, tail, level = heat_basis(source, t, tol)
    X, Y = as_points(basis.manifold, x), as_points(basis.manifold, y)
    value = float(np.sum(basis.evaluate(X)[0] * w * basis.evaluate(Y)[0]))
    return HeatKernelValue(value=value, truncation_level=level, tail_bound=tail)


def heat_kernel_matrix(source, t: float, X, Y, tol: float = 1e-12) -> np.ndarray:
    basis, w, _, _ = heat_basis(source, t, tol)
    return (basis.evaluate(X) * w) @ basis.evaluate(Y).T


def heat_kernel_gradient(source, t: float, x, Y, tol: float = 1e-12) -> np.ndarray:
    """|grad_y K_t(x, y)| for one x and every y."""
    basis, w, _, _ = heat_basis(source, t, tol)
    left = basis.evaluate(x)[0] * w
    return np.linalg.norm(np.einsum("k,nkt->nt", left, basis.gradient(Y)), axis=-1)


def heat_integral(source, t: float, x, tol: float = 1e-12) -> HeatIntegral:
    """
    integral K_t(x, y) d mu(y). With phi_0 = 1 at ell_0 = 1 the raw value is exp(-t);
    the rescaled value exp(t) * raw is 1.
    """
    basis, w, _, level = heat_basis(source, t, tol)
    rule = reference_quadrature(basis.manifold, float(level))
    values = (basis.evaluate(x)[0] * w) @ basis.evaluate(rule.nodes).T
    raw = float(rule.integrate(values))
    return HeatIntegral(raw=raw, rescaled=float(np.exp(t) * raw), t=t)
