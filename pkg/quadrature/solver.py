"""
Positive quadrature as a linear program over cell functionals.

LP_maximin solves

    maximize t  subject to  A W = e_0,  W_k >= t mu(Y_k),  W >= 0, t >= 0

with HiGHS. NNLS minimizes ||A W - e_0|| over W >= 0 and is accepted when the moment
residual is below tolerance.
"""

import logging

import numpy as np
from scipy import sparse
from scipy.optimize import linprog, nnls

from models.errors import QuadratureInfeasibleError, UsageError
from pointsets import audit_partition
from polynomials import DiffusionPolynomial, basis_for
from src.config import settings

from .functionals import FunctionalKind, cell_functional_matrix
from .moments import moments
from .rule import QuadratureMode, QuadratureRule

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-8
REFINE_STEPS = 3
FARKAS_TOL = 1e-9
# Above this L*d the construction is outside its guaranteed regime
LD_WARN = 1.0


def _max_residual(A: np.ndarray, b: np.ndarray, W: np.ndarray) -> float:
    return float(np.max(np.abs(A @ W - b)))


def _maximin_lp(A: np.ndarray, b: np.ndarray, cell_mu: np.ndarray):
    dim, K = A.shape
    c = np.zeros(K + 1)
    c[-1] = -1.0
    A_ub = sparse.hstack([-sparse.identity(K, format="csr"), sparse.csr_matrix(cell_mu[:, None])], format="csr")
    A_eq = np.hstack([A, np.zeros((dim, 1))])
    return linprog(
        c,
        A_ub=A_ub,
        b_ub=np.zeros(K),
        A_eq=A_eq,
        b_eq=b,
        bounds=[(0, None)] * (K + 1),
        method="highs",
    )


def refine_weights(A: np.ndarray, b: np.ndarray, W: np.ndarray, steps: int = REFINE_STEPS):
    """
    Least-squares corrections on the support of W while they keep W >= 0 and lower the
    residual.

    Returns:
        (weights, residual)
    """
    best, best_res = W.copy(), _max_residual(A, b, W)
    for _ in range(steps):
        active = best > 0
        if not active.any():
            break
        delta = np.linalg.lstsq(A[:, active], b - A @ best, rcond=None)[0]
        candidate = best.copy()
        candidate[active] += delta
        if np.any(candidate < 0):
            break
        res = _max_residual(A, b, candidate)
        if res >= best_res:
            break
        best, best_res = candidate, res
    return best, best_res


def farkas_direction(A: np.ndarray, b: np.ndarray, sub, L: float):
    """
    Polynomial y with x_k^*(y) >= 0 for every cell but integral y d mu < 0, or None.

    Found from min b.y subject to A^T y >= 0, -1 <= y <= 1.
    """
    dim = A.shape[0]
    res = linprog(b, A_ub=-A.T, b_ub=np.zeros(A.shape[1]), bounds=[(-1.0, 1.0)] * dim, method="highs")
    if res.status != 0 or res.fun >= -FARKAS_TOL:
        return None
    return DiffusionPolynomial(basis=sub, coefficients=res.x, L=L)


def _report_infeasible(message: str, partition, nu, A, b, sub, L, residual=None):
    audit = audit_partition(partition, nu)
    direction = farkas_direction(A, b, sub, L)
    state = "passed" if audit.ok else "failed"
    logger.error("❌ %s (partition audit %s, certificate %s)", message, state,
                 "found" if direction is not None else "none")
    raise QuadratureInfeasibleError(f"{message}; partition audit {state}", residual=residual, direction=direction)


def _solve_nnls(A, b):
    W, _ = nnls(A, b, maxiter=50 * A.shape[1])
    return refine_weights(A, b, W)


def solve_positive_quadrature(nu, partition, basis, L: float, mode=QuadratureMode.LP_MAXIMIN,
                              kind=FunctionalKind.CELL_AVERAGE, tol: float = RESIDUAL_TOL) -> QuadratureRule:
    """
    Nonnegative weights on the cells of `partition` reproducing the moments of Pi_L.

    Args:
        nu: measure the partition was built from
        partition: Partition of nu
        basis: eigenbasis covering L
        L: order of the rule
        mode: LP_maximin or NNLS; LP falls back to NNLS above settings.lp_max_variables
        kind: CellAverage (|nu|-averages over Y_k) or PointEvaluation (at x_k)
        tol: accepted moment residual

    Raises:
        UsageError: inputs on different manifolds
        QuadratureInfeasibleError: no nonnegative solution within tol
    """
    mode = QuadratureMode(mode)
    kind = FunctionalKind(kind)
    if partition.manifold != nu.manifold:
        raise UsageError("partition and measure live on different manifolds")
    if L * partition.d > LD_WARN:
        logger.warning("⚠️ L*d = %.3g above %.3g; positive weights are not guaranteed", L * partition.d, LD_WARN)

    sub = basis_for(basis, L)
    A = cell_functional_matrix(partition, nu, sub, L, kind)
    b = moments(sub, L).values
    cell_mu = np.asarray(partition.cell_mu, dtype=float)
    K = A.shape[1]

    if mode is QuadratureMode.LP_MAXIMIN and K + 1 > settings.lp_max_variables:
        logger.warning("⚠️ %d cells exceed the LP limit %d; using NNLS", K, settings.lp_max_variables)
        mode = QuadratureMode.NNLS

    achieved_t = None
    if mode is QuadratureMode.LP_MAXIMIN:
        result = _maximin_lp(A, b, cell_mu)
        if result.status == 2:
            _report_infeasible(f"LP infeasible at L={L} with {K} cells", partition, nu, A, b, sub, L)
        if result.status == 0:
            W, residual = refine_weights(A, b, np.maximum(result.x[:K], 0.0))
            achieved_t = float(result.x[K])
        else:
            logger.warning("⚠️ LP stopped with status %d (%s); using NNLS", result.status, result.message)
            mode = QuadratureMode.NNLS
    if mode is QuadratureMode.NNLS:
        W, residual = _solve_nnls(A, b)

    if residual > tol:
        _report_infeasible(f"moment residual {residual:.3e} above {tol:.1e} at L={L}",
                           partition, nu, A, b, sub, L, residual=residual)

    rule = QuadratureRule(
        manifold=nu.manifold,
        L=float(L),
        kind=kind,
        mode=mode,
        points=partition.final_centers.points,
        weights=W,
        cell_mu=cell_mu,
        residual=residual,
        achieved_t=achieved_t,
        partition=partition,
        nu=nu,
    )
    logger.info("✅ %s rule at L=%g: %d weights, residual %.2e, min W/mu %.4g",
                mode.value, L, K, residual, rule.min_weight_ratio)
    return rule
