"""
L^p norms of diffusion polynomials against mu or a SignedMeasure.
"""

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from manifolds import probe_grid, reference_quadrature
from models.errors import UsageError
from models.pydantic_models import ManifoldKind

from .polynomial import DiffusionPolynomial

SUP_OVERSAMPLE = 32
QUAD_OVERSAMPLE = 4
REFINE_CANDIDATES = 8


def check_exponent(p) -> float:
    p = float(p)
    if np.isnan(p) or p < 1:
        raise UsageError(f"Norm exponent must be in [1, inf], got {p}")
    return p


def _dense_nodes(m, L: float) -> np.ndarray:
    if m.kind is ManifoldKind.CIRCLE:
        n = max(256, int(SUP_OVERSAMPLE * np.ceil(L)))
        return (2.0 * np.pi * np.arange(n) / n)[:, None]
    return probe_grid(m, np.pi / (SUP_OVERSAMPLE * max(L, 1.0) / 2.0)).nodes


def _refine(f, m, start: np.ndarray, spacing: float) -> float:
    """Local maximum of f near `start`."""
    if m.kind is ManifoldKind.CIRCLE:
        x0 = float(start[0])
        res = minimize_scalar(lambda t: -f(np.array([[t]]))[0], bounds=(x0 - spacing, x0 + spacing),
                              method="bounded", options={"xatol": 1e-13})
        return -float(res.fun)
    res = minimize(lambda x: -f(np.asarray(x)[None, :])[0], start, method="Nelder-Mead",
                   options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 400})
    return -float(res.fun)


def dense_sup_function(f, m, L: float) -> float:
    """
    sup |f| for a function band-limited at L: max over >= 32 L grid samples, then local
    refinement around the largest samples.
    """
    nodes = _dense_nodes(m, L)
    values = np.abs(f(nodes))
    best = float(values.max())
    spacing = 2.0 * np.pi / nodes.shape[0] if m.kind is ManifoldKind.CIRCLE else np.pi / (SUP_OVERSAMPLE * max(L, 1.0))
    top = np.argsort(values)[-REFINE_CANDIDATES:]
    absf = lambda x: np.abs(f(x))
    for i in top:
        best = max(best, _refine(absf, m, nodes[i], spacing))
    return best


def dense_sup_norm(P: DiffusionPolynomial) -> float:
    """||P||_inf over the manifold."""
    return dense_sup_function(P, P.manifold, P.L)


def mu_integral_power(P: DiffusionPolynomial, p: float) -> float:
    """Integral of |P|^p against mu on an oversampled reference rule (any p > 0)."""
    rule = reference_quadrature(P.manifold, max(1.0, QUAD_OVERSAMPLE * P.L))
    return float(rule.integrate(np.abs(P(rule.nodes)) ** p))


def norm_p(P: DiffusionPolynomial, measure=None, p=2.0) -> float:
    """
    ||P||_{measure; p}.

    Args:
        P: the polynomial
        measure: None or "mu" for the normalized volume measure, else a SignedMeasure
            (its total variation |nu| is used)
        p: exponent in [1, inf]

    Returns:
        the norm; p = 2 against mu is exact by Parseval, other mu-norms use an oversampled
        reference rule, and p = inf uses a refined dense grid
    """
    p = check_exponent(p)
    if measure is None or measure == "mu":
        if p == 2.0:
            return float(np.sqrt(np.sum(P.coefficients ** 2)))
        if np.isinf(p):
            return dense_sup_norm(P)
        return mu_integral_power(P, p) ** (1.0 / p)

    values = np.abs(P(measure.nodes))
    if np.isinf(p):
        mask = measure.support_mask
        return float(values[mask].max()) if mask.any() else 0.0
    return float(measure.abs_masses @ values ** p) ** (1.0 / p)


def gradient_norm_at(P: DiffusionPolynomial, x) -> np.ndarray:
    """|||grad P|||_x; analytic on circle and torus, central differences on the sphere."""
    return P.gradient_norm(x)
