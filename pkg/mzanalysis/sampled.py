"""
Sampled (inner) MZ constants for general p and the sup-norm gap.
"""

import logging
from typing import Sequence

import numpy as np

from helpers import parallel_map, trial_rng
from kernels import phi_polynomial, probe_centers
from models.errors import EmptySupportError
from models.pydantic_models import MZReport, SupNormGapReport
from pointsets import PointSet, mesh_norm
from manifolds import probe_grid
from polynomials import DiffusionPolynomial, basis_for, check_exponent, norm_p, random_polynomial

logger = logging.getLogger(__name__)

EXTREMAL_CENTERS = 4


def _ratio(P: DiffusionPolynomial, nu, p: float) -> float:
    top, bottom = norm_p(P, nu, p), norm_p(P, p=p)
    if bottom == 0.0:
        return 1.0
    return (top / bottom) if np.isinf(p) else (top / bottom) ** p


def trial_polynomials(nu, basis, L: float, trials: int, seed: int):
    """Random polynomials (one generator per trial) followed by Phi_L(x0, .) extremals."""
    m = nu.manifold
    randoms = [random_polynomial(m, L, trial_rng(seed, i)) for i in range(trials)]
    full = basis_for(basis, L)
    extremals = [phi_polynomial(full, L, x0) for x0 in probe_centers(m, EXTREMAL_CENTERS, seed)]
    return randoms + extremals


def mz_ratio_bounds(nu, basis, L: float, p=2.0, trials: int = 50, seed: int = 0) -> MZReport:
    """
    min / max of ||P||_{nu;p}^p / ||P||_{mu;p}^p (sup-norm ratio at p = inf) over trial
    polynomials. These are inner estimates: c1 is at least the true lower constant and c2 at
    most the true upper one.
    """
    p = check_exponent(p)
    if nu.is_zero:
        raise EmptySupportError("mz_ratio_bounds of the zero measure")
    polys = trial_polynomials(nu, basis, L, trials, seed)
    ratios = np.array(parallel_map(lambda P: _ratio(P, nu, p), polys))
    return MZReport(
        manifold=nu.manifold.kind,
        L=L,
        p=p,
        measure_id=nu.name,
        method="Sampled",
        c1=float(ratios.min()),
        c2=float(ratios.max()),
        trials=trials,
        seed=seed,
    )


def sup_norm_gap(nu, basis, L: float, trials: int = 20, seed: int = 0,
                 extra: Sequence[DiffusionPolynomial] = ()) -> SupNormGapReport:
    """
    Worst | ||P||_{nu;inf} - ||P||_{mu;inf} | / ||P||_{mu;inf} over random P and `extra`,
    with delta(supp nu) * L.
    """
    if nu.is_zero:
        raise EmptySupportError("sup_norm_gap of the zero measure")
    polys = [random_polynomial(nu.manifold, L, trial_rng(seed, i)) for i in range(trials)] + list(extra)

    def gap(P):
        full = norm_p(P, p=np.inf)
        return 0.0 if full == 0.0 else abs(norm_p(P, nu, np.inf) - full) / full

    gaps = parallel_map(gap, polys)
    m = nu.manifold
    delta = mesh_norm(PointSet(m, nu.support), probe_grid(m, m.diameter / 2048))
    return SupNormGapReport(gap=float(max(gaps)), mesh_times_L=float(delta * L), trials=len(polys))
