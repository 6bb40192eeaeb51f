"""
Checks of the classical polynomial inequalities: Christoffel growth, Bernstein, Nikolskii
and closure of Pi_L under products.
"""

import logging
from typing import Sequence

import numpy as np

from manifolds import eigen_system, random_points, reference_quadrature
from models.errors import UsageError
from models.pydantic_models import ManifoldKind, NikolskiiReport, ProductLeakage

from .norms import dense_sup_norm, mu_integral_power, norm_p
from .polynomial import DiffusionPolynomial, basis_for, random_polynomial, trig_polynomial

logger = logging.getLogger(__name__)


def christoffel(source, L: float, x) -> np.ndarray:
    """sum_{ell_j <= L} phi_j(x)^2 at every point of x."""
    basis = basis_for(source, L)
    return np.sum(basis.evaluate(x) ** 2, axis=1)


def christoffel_band(source, L: float, samples: int = 50, seed: int = 0):
    """(min, max) of the Christoffel sum divided by L^alpha over random points."""
    basis = basis_for(source, L)
    m = basis.manifold
    values = christoffel(basis, L, random_points(m, samples, np.random.default_rng(seed)))
    scale = float(L) ** m.alpha
    return float(values.min() / scale), float(values.max() / scale)


def bernstein_ratio(L: float, trials: int = 200, rng_seed: int = 0) -> float:
    """
    max ||P'||_inf / (L ||P||_inf) on the circle over random P in Pi_L and cos(L theta).
    """
    if L < 1:
        raise UsageError(f"bernstein_ratio needs L >= 1, got {L}")
    rng = np.random.default_rng(rng_seed)
    candidates = [trig_polynomial(L, cos_terms={int(L): 1.0})]
    candidates += [random_polynomial(ManifoldKind.CIRCLE, L, rng) for _ in range(trials)]
    worst = 0.0
    for P in candidates:
        worst = max(worst, dense_sup_norm(P.derivative()) / (L * dense_sup_norm(P)))
    return worst


def _p_quantity(P: DiffusionPolynomial, p: float) -> float:
    if np.isinf(p):
        return dense_sup_norm(P)
    if p == 2.0:
        return norm_p(P, p=2.0)
    return mu_integral_power(P, p) ** (1.0 / p)


def nikolskii_ratio(source, Ls: Sequence[float], p: float, r: float, trials: int = 20,
                    rng_seed: int = 0, x0=None) -> NikolskiiReport:
    """
    Worst observed ||P||_r / ||P||_p over random P and the extremal Phi_L(x0, .), per L,
    and the log-log slope of the extremal ratios against alpha (1/p - 1/r).

    p < 1 is accepted; the quantities are then raw quadrature integrals to the power 1/p
    and the report is flagged.
    """
    from kernels import phi_polynomial

    p, r = float(p), float(r)
    if not 0 < p < r:
        raise UsageError(f"nikolskii_ratio needs 0 < p < r, got p={p}, r={r}")
    Ls = [float(L) for L in Ls]
    if any(L < 1 for L in Ls):
        raise UsageError("nikolskii_ratio needs every L >= 1")

    m = basis_for(source, 1.0).manifold
    rng = np.random.default_rng(rng_seed)
    x0 = np.zeros(m.coord_dim) if x0 is None else x0

    ratios, extremal = [], []
    for L in Ls:
        worst = 0.0
        for _ in range(trials):
            P = random_polynomial(m, L, rng)
            worst = max(worst, _p_quantity(P, r) / _p_quantity(P, p))
        Phi = phi_polynomial(eigen_system(m, L), L, x0)
        ext = _p_quantity(Phi, r) / _p_quantity(Phi, p)
        ratios.append(max(worst, ext))
        extremal.append(ext)

    slope = float(np.polyfit(np.log(Ls), np.log(extremal), 1)[0]) if len(Ls) >= 2 else None
    claimed = m.alpha * (1.0 / p - (0.0 if np.isinf(r) else 1.0 / r))
    if p < 1:
        logger.warning("⚠️ Nikolskii with p=%.3g < 1: quantities are raw integrals, not norms", p)
    return NikolskiiReport(
        p=p, r=r, Ls=Ls, ratios=ratios, extremal_ratios=extremal,
        slope=slope, claimed_slope=claimed, raw_integrals=p < 1,
    )


def product_leakage(Q: DiffusionPolynomial, R: DiffusionPolynomial, Astar: float = 2.0) -> ProductLeakage:
    """
    Relative part of QR outside Pi_{Astar L}.

    The product is sampled on a reference rule of level max(2L, Astar L) + 1 and projected
    onto Pi_{Astar L}; l2 is ||QR - S(QR)||_2 / ||QR||_2 and grid_inf the same ratio of
    node maxima.
    """
    if Q.manifold != R.manifold:
        raise UsageError("product_leakage needs polynomials on the same manifold")
    if Astar < 1:
        raise UsageError(f"Astar must be >= 1, got {Astar}")
    L = max(Q.L, R.L)
    m = Q.manifold
    rule = reference_quadrature(m, max(2.0 * L, Astar * L) + 1.0)
    target = eigen_system(m, max(Astar * L, 1.0))

    product = Q(rule.nodes) * R(rule.nodes)
    phi = target.evaluate(rule.nodes)
    residual = product - phi @ rule.integrate(product[:, None] * phi)

    energy = float(np.sqrt(rule.integrate(product ** 2)))
    if energy == 0.0:
        return ProductLeakage(l2=0.0, grid_inf=0.0)
    return ProductLeakage(
        l2=float(np.sqrt(max(rule.integrate(residual ** 2), 0.0))) / energy,
        grid_inf=float(np.abs(residual).max() / np.abs(product).max()),
    )
