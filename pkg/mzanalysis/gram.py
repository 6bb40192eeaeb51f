"""
Exact p = 2 MZ constants from the Gram matrix of Pi_L against |nu|.
"""

import logging

import numpy as np

from models.errors import DimensionCapError, EmptySupportError
from models.pydantic_models import MZReport
from polynomials import basis_for
from src.config import settings

logger = logging.getLogger(__name__)

CHUNK = 4096


def gram_matrix(nu, basis, L: float) -> np.ndarray:
    """G_jk = integral phi_j phi_k d|nu| over the basis of Pi_L."""
    sub = basis_for(basis, L)
    if sub.dim > settings.gram_cap:
        raise DimensionCapError(
            f"dim Pi_L = {sub.dim} exceeds the Gram cap {settings.gram_cap} (MZLAB_GRAM_CAP)"
        )
    gram = np.zeros((sub.dim, sub.dim))
    nodes, masses = nu.nodes, nu.abs_masses
    for start in range(0, nodes.shape[0], CHUNK):
        values = sub.evaluate(nodes[start:start + CHUNK])
        gram += values.T @ (masses[start:start + CHUNK, None] * values)
    return gram


def mz_constants_p2(nu, basis, L: float) -> MZReport:
    """
    c1, c2 = extreme eigenvalues of the Gram matrix, so that
    c1 ||P||_{mu;2}^2 <= ||P||_{nu;2}^2 <= c2 ||P||_{mu;2}^2 for every P in Pi_L.

    Raises:
        DimensionCapError: dim Pi_L above settings.gram_cap
    """
    if nu.is_zero:
        raise EmptySupportError("mz_constants_p2 of the zero measure")
    eigenvalues = np.linalg.eigvalsh(gram_matrix(nu, basis, L))
    c1, c2 = max(float(eigenvalues[0]), 0.0), float(eigenvalues[-1])
    logger.info("📊 Gram MZ constants for %s at L=%g: c1=%.6g, c2=%.6g", nu.name, L, c1, c2)
    return MZReport(
        manifold=nu.manifold.kind,
        L=L,
        p=2.0,
        measure_id=nu.name,
        method="GramExact_p2",
        c1=c1,
        c2=c2,
    )
