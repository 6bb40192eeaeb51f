"""
Diffusion polynomials: coefficient vectors over a truncated eigenbasis.
"""

from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from manifolds import ManifoldModel, SpectralBasis, eigen_system, get_manifold
from models.errors import TruncationError, UsageError
from models.pydantic_models import ManifoldKind


def basis_for(source, L: float) -> SpectralBasis:
    """Eigenbasis of Pi_L from a manifold, a manifold kind or a larger basis."""
    if isinstance(source, SpectralBasis):
        return source.truncate(L) if source.L_max >= L else eigen_system(source.manifold, L)
    if not isinstance(source, ManifoldModel):
        source = get_manifold(source)
    return eigen_system(source, max(float(L), 1.0))


@dataclass(frozen=True, eq=False)
class DiffusionPolynomial:
    """
    P = sum_k a_k phi_k over the basis of Pi_L.

    Attributes:
        basis: eigenbasis with ell_k <= L
        coefficients: a_k, one per basis entry
        L: degree
    """

    basis: SpectralBasis
    coefficients: np.ndarray
    L: float

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=float)
        if coeffs.shape != (self.basis.dim,):
            raise UsageError(
                f"Polynomial needs {self.basis.dim} coefficients for L={self.L}, got {coeffs.shape}"
            )
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def manifold(self) -> ManifoldModel:
        return self.basis.manifold

    def __call__(self, points) -> np.ndarray:
        return self.basis.evaluate(points) @ self.coefficients

    def gradient(self, points) -> np.ndarray:
        """Intrinsic gradient in an orthonormal tangent frame, shape (n, tdim)."""
        return np.einsum("nkt,k->nt", self.basis.gradient(points), self.coefficients)

    def gradient_norm(self, points) -> np.ndarray:
        """|||grad P|||_x at every point."""
        return np.linalg.norm(self.gradient(points), axis=-1)

    def lift(self, L: float) -> "DiffusionPolynomial":
        """The same polynomial written over the basis of Pi_L, L >= self.L."""
        if L < self.L:
            raise TruncationError(f"Cannot lift a degree-{self.L} polynomial to L={L}")
        basis = basis_for(self.manifold, L)
        coeffs = np.zeros(basis.dim)
        coeffs[:self.basis.dim] = self.coefficients
        return DiffusionPolynomial(basis, coeffs, float(L))

    def _aligned(self, other: "DiffusionPolynomial"):
        L = max(self.L, other.L)
        return self.lift(L), other.lift(L), L

    def __add__(self, other: "DiffusionPolynomial") -> "DiffusionPolynomial":
        a, b, L = self._aligned(other)
        return DiffusionPolynomial(a.basis, a.coefficients + b.coefficients, L)

    def __sub__(self, other: "DiffusionPolynomial") -> "DiffusionPolynomial":
        a, b, L = self._aligned(other)
        return DiffusionPolynomial(a.basis, a.coefficients - b.coefficients, L)

    def __mul__(self, factor: float) -> "DiffusionPolynomial":
        return DiffusionPolynomial(self.basis, factor * self.coefficients, self.L)

    __rmul__ = __mul__

    def derivative(self) -> "DiffusionPolynomial":
        """P' on the circle, again in Pi_L."""
        if self.manifold.kind is not ManifoldKind.CIRCLE:
            raise UsageError("derivative() is defined on the circle only; use gradient()")
        out = np.zeros_like(self.coefficients)
        for i, (k, t) in enumerate(self.basis.labels):
            if t == "c":
                out[self.basis.index_of((k, "s"))] -= k * self.coefficients[i]
            elif t == "s":
                out[self.basis.index_of((k, "c"))] += k * self.coefficients[i]
        return DiffusionPolynomial(self.basis, out, self.L)


def from_labels(source, L: float, terms: Dict) -> DiffusionPolynomial:
    """Polynomial with the given {label: coefficient} entries, zero elsewhere."""
    basis = basis_for(source, L)
    coeffs = np.zeros(basis.dim)
    for label, value in terms.items():
        coeffs[basis.index_of(label)] = value
    return DiffusionPolynomial(basis, coeffs, float(L))


def constant_polynomial(source, value: float = 1.0, L: float = 1.0) -> DiffusionPolynomial:
    basis = basis_for(source, L)
    return from_labels(basis, L, {basis.labels[0]: value})


def trig_polynomial(L: float, cos_terms: Optional[Dict[int, float]] = None,
                    sin_terms: Optional[Dict[int, float]] = None, constant: float = 0.0) -> DiffusionPolynomial:
    """
    Circle polynomial c + sum a_k cos(k theta) + sum b_k sin(k theta).

    Example:
        trig_polynomial(8, cos_terms={8: 1.0}) is cos(8 theta)
    """
    terms = {(0, "1"): constant}
    for k, a in (cos_terms or {}).items():
        terms[(k, "c")] = a / np.sqrt(2.0)
    for k, b in (sin_terms or {}).items():
        terms[(k, "s")] = b / np.sqrt(2.0)
    return from_labels(ManifoldKind.CIRCLE, L, terms)


def random_polynomial(source, L: float, rng_seed: int = 0) -> DiffusionPolynomial:
    """
    P in Pi_L with i.i.d. standard normal coefficients.

    Args:
        source: manifold, manifold kind or basis
        L: degree, at least 1
        rng_seed: seed or numpy Generator

    Returns:
        DiffusionPolynomial, identical for identical seeds
    """
    if L < 1:
        raise UsageError(f"random_polynomial needs L >= 1, got {L}")
    basis = basis_for(source, L)
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    return DiffusionPolynomial(basis, rng.standard_normal(basis.dim), float(L))
