"""
Moments of the eigenbasis against mu.
"""

from dataclasses import dataclass

import numpy as np

from manifolds import reference_quadrature
from models.errors import ReferenceQuadratureError
from polynomials import basis_for

MOMENT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class MomentVector:
    """integral phi_j d mu for ell_j <= L: (1, 0, 0, ...)."""

    values: np.ndarray
    L: float

    def __len__(self) -> int:
        return self.values.shape[0]


def moments(basis, L: float) -> MomentVector:
    """delta_{j0}, cross-checked against the reference rule."""
    sub = basis_for(basis, L)
    values = np.zeros(sub.dim)
    values[0] = 1.0
    rule = reference_quadrature(sub.manifold, max(float(L), 1.0))
    computed = rule.integrate(sub.evaluate(rule.nodes))
    deviation = float(np.max(np.abs(computed - values)))
    if deviation > MOMENT_TOL:
        raise ReferenceQuadratureError(f"Moment cross-check off by {deviation:.3e} at L={L}")
    return MomentVector(values=values, L=float(L))
