"""
Localized kernel Phi_L(x, y) = sum_j h(ell_j / L) phi_j(x) phi_j(y), the operator sigma_L
and its discretization against a measure nu.
"""

import numpy as np

from manifolds import SpectralBasis, as_points, reference_quadrature
from models.errors import InsufficientQuadratureError, TruncationError, UsageError
from polynomials import DiffusionPolynomial, basis_for

from .cutoff import cutoff_h

CHUNK = 4096
ELL_TOL = 1e-12


def filtered_basis(basis: SpectralBasis, L: float):
    """(basis restricted to ell < L, filter weights h(ell / L))."""
    if L <= 0:
        raise UsageError(f"Kernel level must be positive, got {L}")
    if basis.L_max + ELL_TOL < L:
        raise TruncationError(f"Basis truncated at {basis.L_max} cannot resolve Phi_L at L={L}")
    weights = cutoff_h(basis.ells / L)
    count = int(np.count_nonzero(weights > 0.0))
    return basis.head(max(count, 1)), np.atleast_1d(weights)[:max(count, 1)]


def phi_kernel(basis: SpectralBasis, L: float, x, y):
    """
    Phi_L at paired points: x[i] with y[i].

    Returns:
        float for a single pair, otherwise an array
    """
    sub, w = filtered_basis(basis, L)
    X, Y = as_points(basis.manifold, x), as_points(basis.manifold, y)
    if X.shape[0] != Y.shape[0]:
        raise UsageError("phi_kernel pairs x[i] with y[i]; use phi_kernel_matrix for all pairs")
    values = np.sum(sub.evaluate(X) * w * sub.evaluate(Y), axis=1)
    return float(values[0]) if values.size == 1 else values


def phi_kernel_matrix(basis: SpectralBasis, L: float, X, Y) -> np.ndarray:
    """Matrix Phi_L(X[i], Y[j])."""
    sub, w = filtered_basis(basis, L)
    left = sub.evaluate(X) * w
    Y = as_points(basis.manifold, Y)
    out = np.empty((left.shape[0], Y.shape[0]))
    for start in range(0, Y.shape[0], CHUNK):
        out[:, start:start + CHUNK] = left @ sub.evaluate(Y[start:start + CHUNK]).T
    return out


def phi_polynomial(basis: SpectralBasis, L: float, x0) -> DiffusionPolynomial:
    """Phi_L(x0, .) as an element of Pi_L."""
    sub, w = filtered_basis(basis, L)
    target = basis_for(basis.manifold, L)
    coeffs = np.zeros(target.dim)
    coeffs[:sub.dim] = w * sub.evaluate(x0)[0]
    return DiffusionPolynomial(target, coeffs, float(max(L, 1.0)))


def _filter_coefficients(basis: SpectralBasis, L: float, transform: np.ndarray) -> DiffusionPolynomial:
    sub, w = filtered_basis(basis, L)
    target = basis_for(basis.manifold, L)
    coeffs = np.zeros(target.dim)
    coeffs[:sub.dim] = w * transform[:sub.dim]
    return DiffusionPolynomial(target, coeffs, float(max(L, 1.0)))


def sigma_op(basis: SpectralBasis, L: float, f, rule=None) -> DiffusionPolynomial:
    """
    sigma_L(f) = sum_j h(ell_j / L) f_hat(j) phi_j, with f_hat from a reference rule.

    Args:
        basis: eigenbasis covering L
        L: level
        f: callable on points, or samples of f at rule.nodes
        rule: reference rule exact to degree >= 2L (defaults to reference_quadrature(m, 2L))

    Raises:
        InsufficientQuadratureError: rule not exact to degree 2L
    """
    m = basis.manifold
    rule = rule or reference_quadrature(m, max(2.0 * L, 1.0))
    if rule.exact_degree + ELL_TOL < 2.0 * L:
        raise InsufficientQuadratureError(
            f"sigma_L at L={L} needs a rule exact to degree {2 * L}, got {rule.exact_degree}"
        )
    values = f(rule.nodes) if callable(f) else np.asarray(f, dtype=float)
    if values.shape != (rule.nodes.shape[0],):
        raise UsageError(f"sigma_op needs {rule.nodes.shape[0]} samples, got {values.shape}")
    sub, _ = filtered_basis(basis, L)
    return _filter_coefficients(basis, L, rule.integrate(values[:, None] * sub.evaluate(rule.nodes)))


def sigma_discrete(basis: SpectralBasis, L: float, nu, f) -> DiffusionPolynomial:
    """
    x -> integral Phi_L(x, y) f(y) d nu(y), summed over the nodes of nu.

    Args:
        f: callable on points, or one value per node of nu
    """
    nodes = nu.nodes
    values = f(nodes) if callable(f) else np.asarray(f, dtype=float)
    if values.shape != (nodes.shape[0],):
        raise UsageError(
            f"f must be sampled at the {nodes.shape[0]} nodes of {nu.name}, got shape {values.shape}"
        )
    sub, _ = filtered_basis(basis, L)
    transform = (nu.masses * values) @ sub.evaluate(nodes)
    return _filter_coefficients(basis, L, transform)
