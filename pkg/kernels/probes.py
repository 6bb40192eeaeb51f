"""
Probe reports: localization of Phi_L, Gaussian heat-kernel constants and the
Young-type bound for sigma_L.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from manifolds import ProbeGrid, eigen_system, pairwise_distances, probe_grid, random_points, reference_quadrature
from models.errors import UsageError
from models.pydantic_models import KernelProbeReport, KernelProbeRow, ManifoldKind
from polynomials import basis_for, christoffel, norm_p, random_polynomial

from .cutoff import cutoff_h
from .heat import heat_kernel_gradient, heat_kernel_matrix
from .localized import phi_kernel_matrix, sigma_op

logger = logging.getLogger(__name__)

HEAT_TIMES = (0.2, 0.1, 0.05, 0.02)
POINTS_PER_INV_L = 8
FLAT_FLOOR = 1e-10
ENVELOPE_QUANTILE = 0.999
BETA_CAP = 0.5


def probe_centers(m, count: int, seed: int = 0) -> np.ndarray:
    """The base point (all coordinates zero; the north pole on the sphere) plus random points."""
    base = np.zeros((1, m.coord_dim))
    extra = random_points(m, max(count - 1, 0), np.random.default_rng(seed))
    return np.concatenate([base, extra])


def _beta_hat(K: np.ndarray, rho: np.ndarray, diag: np.ndarray, L: float) -> float:
    """Largest beta <= 1/2 with |Phi_L(x, y)| >= Phi_L(x, x) / 2 whenever rho(x, y) <= beta / L."""
    beta = BETA_CAP
    for row, dist, peak in zip(K, rho, diag):
        low = np.abs(row) < 0.5 * peak
        if np.any(low):
            beta = min(beta, L * float(dist[low].min()))
    return beta


def _kernel_row(m, L: float, S_values, centers: np.ndarray, grid: ProbeGrid) -> KernelProbeRow:
    basis = eigen_system(m, L)
    K = phi_kernel_matrix(basis, L, centers, grid.nodes)
    rho = pairwise_distances(m, centers, grid.nodes)
    scale = L ** m.alpha

    c_by_S = {}
    for S in S_values:
        decay = np.maximum(1.0, (L * rho) ** S)
        c_by_S[str(S)] = float(np.max(np.abs(K) * decay) / scale)

    sup_l1 = float(np.max(np.abs(K) @ grid.weights))
    diag = np.sum(basis.evaluate(centers) ** 2 * cutoff_h(basis.ells / L), axis=1)
    chris = christoffel(basis, L, centers) / scale
    return KernelProbeRow(
        L=L,
        sup_l1=sup_l1,
        c_by_S=c_by_S,
        christoffel_lo=float(chris.min()),
        christoffel_hi=float(chris.max()),
        beta_hat=_beta_hat(K, rho, diag, L),
    )


def _fit_gaussian(m, centers: np.ndarray, grid: ProbeGrid, times: Sequence[float]):
    """
    kappa3 from least squares on log(|K_t| t^{alpha/2}) against rho^2 / t, then kappa2 as the
    99.9% envelope; kappa4 = min over x and t of K_t(x, x) t^{alpha/2}.
    """
    rho2 = pairwise_distances(m, centers, grid.nodes) ** 2
    logs, zs, diag_scaled = [], [], []
    samples = []
    for t in times:
        K = heat_kernel_matrix(m, t, centers, grid.nodes)
        scaled = np.abs(K) * t ** (m.alpha / 2.0)
        keep = np.abs(K) > FLAT_FLOOR * np.abs(K).max()
        logs.append(np.log(scaled[keep]))
        zs.append((rho2 / t)[keep])
        samples.append((scaled, rho2 / t))
        diag = np.diag(heat_kernel_matrix(m, t, centers, centers))
        diag_scaled.append(diag * t ** (m.alpha / 2.0))

    y, z = np.concatenate(logs), np.concatenate(zs)
    slope = float(np.polyfit(z, y, 1)[0]) if np.ptp(z) > 0 else 0.0
    kappa3 = max(-slope, 1e-6)
    envelope = np.concatenate([(s * np.exp(kappa3 * q)).ravel() for s, q in samples])
    kappa2 = float(np.quantile(envelope, ENVELOPE_QUANTILE, method="higher"))
    violations = float(np.mean(envelope > kappa2 * (1.0 + 1e-12)))
    kappa4 = float(np.min(np.concatenate(diag_scaled)))
    return kappa2, kappa3, kappa4, violations


def _gradient_envelope(m, centers: np.ndarray, grid: ProbeGrid, times, kappa3: float) -> float:
    """max |grad_y K_t(x, y)| t^{(alpha+1)/2} exp(kappa3 rho^2 / t) over probes."""
    rho2 = pairwise_distances(m, centers, grid.nodes) ** 2
    worst = 0.0
    for t in times:
        for i, x in enumerate(centers):
            g = heat_kernel_gradient(m, t, x[None, :], grid.nodes)
            weight = t ** ((m.alpha + 1) / 2.0) * np.exp(np.minimum(kappa3 * rho2[i] / t, 700.0))
            worst = max(worst, float(np.max(g * weight)))
    return worst


def localization_report(source, Ls: Sequence[float], S: Optional[int] = None, probes: int = 4,
                        grid: Optional[ProbeGrid] = None, heat_times: Sequence[float] = HEAT_TIMES,
                        seed: int = 0) -> KernelProbeReport:
    """
    Fit the localization constants of Phi_L and the heat-kernel constants.

    Args:
        source: manifold, manifold kind or basis
        Ls: levels to probe
        S: smallest decay exponent, S > alpha (defaults to alpha + 1); c(S) is fitted for
            S, ..., alpha + 6
        probes: number of centers x
        grid: y-grid; must have at least 8 points per 1/L (resolution <= 1/(8 L))
        heat_times: t values for the Gaussian fits

    Returns:
        KernelProbeReport

    Raises:
        UsageError: S <= alpha, or the grid is too coarse
    """
    m = basis_for(source, 1.0).manifold
    S = m.alpha + 1 if S is None else int(S)
    if S <= m.alpha:
        raise UsageError(f"Localization exponent S must exceed alpha={m.alpha}, got {S}")
    S_values = list(range(S, max(S, m.alpha + 6) + 1))
    Ls = [float(L) for L in Ls]
    if not Ls or min(Ls) < 1:
        raise UsageError("localization_report needs levels L >= 1")

    centers = probe_centers(m, probes, seed)
    rows = []
    for L in Ls:
        needed = 1.0 / (POINTS_PER_INV_L * L)
        if grid is not None and grid.resolution > needed:
            raise UsageError(
                f"Probe grid too coarse for L={L:g}: resolution {grid.resolution:.3g} > {needed:.3g}"
            )
        rows.append(_kernel_row(m, L, S_values, centers, grid or probe_grid(m, needed)))
        logger.info("📊 L=%g: sup L1 %.4f, beta_hat %.3f", L, rows[-1].sup_l1, rows[-1].beta_hat)

    heat_grid = grid or probe_grid(m, min(0.02, 0.5 * np.sqrt(min(heat_times))))
    kappa2, kappa3, kappa4, violations = _fit_gaussian(m, centers, heat_grid, heat_times)
    envelope = _gradient_envelope(m, centers, heat_grid, heat_times, kappa3)
    return KernelProbeReport(
        manifold=m.kind,
        S_values=S_values,
        rows=rows,
        kappa2=kappa2,
        kappa3=kappa3,
        kappa4=kappa4,
        gaussian_violation_rate=violations,
        heat_times=list(heat_times),
        gradient_envelope=envelope,
        gradient_method="finite_difference" if m.kind is ManifoldKind.SPHERE2 else "analytic",
    )


def sigma_norm_constant(source, Ls: Sequence[float] = (8, 16, 32, 64), ps=(1.0, 2.0, np.inf),
                        trials: int = 3, seed: int = 0) -> float:
    """
    One constant c with ||sigma_L(f)||_p <= c ||f||_p over square-wave type f = sign(P),
    P random, for every L and p given.
    """
    m = basis_for(source, 1.0).manifold
    rng = np.random.default_rng(seed)
    worst = 0.0
    for L in Ls:
        rule = reference_quadrature(m, max(2.0 * L, 1.0))
        basis = eigen_system(m, L)
        for _ in range(trials):
            f = np.sign(random_polynomial(m, max(L / 4.0, 1.0), rng)(rule.nodes))
            image = sigma_op(basis, L, f, rule=rule)
            for p in ps:
                if np.isinf(p):
                    f_norm = float(np.abs(f).max())
                else:
                    f_norm = float(rule.integrate(np.abs(f) ** p)) ** (1.0 / p)
                worst = max(worst, norm_p(image, p=p) / f_norm)
    return worst
