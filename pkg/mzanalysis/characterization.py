"""
Round trip between the regularity / dominance norms of nu and its measured MZ constants.
"""

import logging
from typing import Dict, Sequence

import numpy as np

from kernels import phi_kernel_matrix
from manifolds import ball_measure, eigen_system, pairwise_distances, probe_grid
from measures import dominance_norm, regularity_norm
from models.errors import EmptySupportError, UsageError
from models.pydantic_models import CharacterizationReport
from polynomials import basis_for, check_exponent

from .gram import mz_constants_p2
from .sampled import mz_ratio_bounds

logger = logging.getLogger(__name__)

TAIL_RADII = (1, 2, 4, 8)


def _mu_scaled(m, d: float) -> float:
    """mu(B(x, d)) / d^alpha, the same for every x."""
    return float(ball_measure(m, np.zeros(m.coord_dim), d)) / d ** m.alpha


def phi_tail_mass(source, L: float, radii: Sequence[float] = TAIL_RADII, x0=None) -> Dict[str, float]:
    """integral over rho(x0, y) >= r / L of |Phi_L(x0, y)| d mu(y), for every r."""
    m = basis_for(source, 1.0).manifold
    x0 = np.zeros((1, m.coord_dim)) if x0 is None else np.atleast_2d(x0)
    grid = probe_grid(m, 1.0 / (8.0 * L))
    values = np.abs(phi_kernel_matrix(eigen_system(m, L), L, x0, grid.nodes)[0])
    rho = pairwise_distances(m, x0, grid.nodes)[0]
    return {str(r): float(np.sum(grid.weights * values * (rho >= r / L))) for r in radii}


def scale_equivalence(nu, d: float, gammas: Sequence[float] = (2.0, 4.0, 8.0)) -> float:
    """Smallest c with R(gamma d) <= c (gamma + 1)^alpha R(d) over the probed gammas."""
    base = regularity_norm(nu, d).R_norm
    if not base:
        raise EmptySupportError(f"regularity norm vanishes at d={d}")
    alpha = nu.manifold.alpha
    return float(max(regularity_norm(nu, g * d).R_norm / ((g + 1.0) ** alpha * base) for g in gammas))


def characterization_roundtrip(nu, basis, L: float, p=2.0, dominance_factor: float = 1.0,
                               c5: float = 1.0, trials: int = 50, seed: int = 0) -> CharacterizationReport:
    """
    Compare regularity and dominance norms of nu (normalized by those of mu) with its MZ
    constants c1, c2 at degree L.

    upper_constant = c2 / R_ratio and regularity_constant = R_ratio / c2 close the upper
    direction; lower_constant = 1 / (c1 D_ratio) bounds c1 from dominance and
    dominance_constant = c1 D_ratio bounds dominance from c1. For the converse the scales
    d_S = c5 max(1, R c2)^{1/(S - alpha)} / L are swept over S = alpha+1, ..., alpha+6 and
    the normalized regularity at d_S divided by c2 is recorded.

    Args:
        nu: nonzero measure
        L: degree; regularity is probed at d = 1/L, dominance at d = dominance_factor / L
        p: exponent in [1, inf); p = 2 uses the Gram route, other p the sampled bounds
    """
    p = check_exponent(p)
    if np.isinf(p):
        raise UsageError("characterization_roundtrip needs a finite p")
    if nu.is_zero:
        raise EmptySupportError("characterization_roundtrip of the zero measure")
    m = nu.manifold

    d_reg = 1.0 / L
    R_ratio = regularity_norm(nu, d_reg).R_norm / _mu_scaled(m, d_reg)
    d_dom = dominance_factor / L
    dominance = dominance_norm(nu, d_dom)
    D_ratio = None if dominance.dominance_infinite else dominance.D_norm * _mu_scaled(m, d_dom)

    if p == 2.0:
        mz = mz_constants_p2(nu, basis, L)
    else:
        mz = mz_ratio_bounds(nu, basis, L, p, trials=trials, seed=seed)
    c1, c2 = mz.c1, mz.c2

    converse_constants, converse_scales = {}, {}
    for S in range(m.alpha + 1, m.alpha + 7):
        d_S = c5 * max(1.0, R_ratio * c2) ** (1.0 / (S - m.alpha)) / L
        d_S = min(d_S, m.diameter)
        R_S = regularity_norm(nu, d_S).R_norm / _mu_scaled(m, d_S)
        converse_scales[str(S)] = d_S
        converse_constants[str(S)] = R_S / c2 if c2 > 0 else float("inf")

    report = CharacterizationReport(
        L=L,
        p=p,
        R_ratio=R_ratio,
        D_ratio=D_ratio,
        dominance_infinite=dominance.dominance_infinite,
        c1=c1,
        c2=c2,
        upper_constant=c2 / R_ratio if R_ratio > 0 else float("inf"),
        regularity_constant=R_ratio / c2 if c2 > 0 else float("inf"),
        lower_constant=None if D_ratio is None or c1 <= 0 else 1.0 / (c1 * D_ratio),
        dominance_constant=None if D_ratio is None else c1 * D_ratio,
        converse_constants=converse_constants,
        converse_scales=converse_scales,
        phi_tail=phi_tail_mass(m, L),
    )
    logger.info("📊 Round trip for %s at L=%g: R=%.4g c2=%.4g c1=%.4g", nu.name, L, R_ratio, c2, c1)
    return report
