"""
Checks on quadrature rules: moment residuals, MZ constants of the quadrature measure,
product errors and reproduction of Pi_L through sigma_{2L}.
"""

import logging

import numpy as np

from helpers import parallel_map, trial_rng
from kernels import sigma_discrete
from models.errors import OrderShortfallError
from models.pydantic_models import MZReport
from mzanalysis import mz_constants_p2, mz_ratio_bounds
from polynomials import basis_for, check_exponent, dense_sup_norm, norm_p, random_polynomial

from .rule import QuadratureRule

logger = logging.getLogger(__name__)

CHUNK = 8192
ORDER_TOL = 1e-9


def measure_moments(tau, sub) -> np.ndarray:
    """integral phi_j d tau for every entry of `sub`."""
    out = np.zeros(sub.dim)
    for start in range(0, tau.nodes.shape[0], CHUNK):
        out += tau.masses[start:start + CHUNK] @ sub.evaluate(tau.nodes[start:start + CHUNK])
    return out


def quadrature_residual(rule: QuadratureRule, basis, L_test: float) -> float:
    """max_j | sum_k W_k x_k^*(phi_j) - delta_{j0} | over ell_j <= L_test."""
    sub = basis_for(basis, L_test)
    values = measure_moments(rule.as_measure(), sub)
    values[0] -= 1.0
    return float(np.max(np.abs(values)))


def _product_error(tau, P1, P2) -> float:
    on_tau = float(tau.masses @ (P1(tau.nodes) * P2(tau.nodes)))
    on_mu = float(P1.coefficients @ P2.coefficients)
    scale = norm_p(P1) * norm_p(P2)
    return abs(on_tau - on_mu) / scale if scale else 0.0


def verify_quadrature_mz(rule: QuadratureRule, basis, L: float, p=2.0, trials: int = 20,
                         Astar: float = 2.0, seed: int = 0) -> MZReport:
    """
    MZ constants of the quadrature measure tau at degree L, plus the worst relative error
    | int P1 P2 d tau - int P1 P2 d mu | / (||P1|| ||P2||) over random P1, P2 in Pi_{2L}.

    Raises:
        OrderShortfallError: rule.L below 2 * Astar * L
    """
    p = check_exponent(p)
    needed = 2.0 * Astar * L
    if rule.L + ORDER_TOL < needed:
        raise OrderShortfallError(f"rule of order {rule.L} cannot certify L={L}; needs order {needed:g}")
    tau = rule.as_measure()
    if p == 2.0:
        report = mz_constants_p2(tau, basis, L)
    else:
        report = mz_ratio_bounds(tau, basis, L, p, trials=trials, seed=seed)

    m = rule.manifold

    def pair_error(i):
        P1 = random_polynomial(m, 2 * L, trial_rng(seed, 2 * i))
        P2 = random_polynomial(m, 2 * L, trial_rng(seed, 2 * i + 1))
        return _product_error(tau, P1, P2)

    product_error = max(parallel_map(pair_error, range(trials)))
    logger.info("📊 Quadrature MZ at L=%g: c1=%.6g c2=%.6g product error %.2e",
                L, report.c1, report.c2, product_error)
    return report.model_copy(update={
        "trials": trials,
        "seed": seed,
        "fitted_constants": {**report.fitted_constants, "product_error": product_error,
                             "order": rule.L, "Astar": Astar},
    })


def sigma_reproduction_error(rule: QuadratureRule, basis, L: float, trials: int = 10, seed: int = 0) -> float:
    """
    Fitted c = max over random P in Pi_L of L ||sigma_{2L}(tau; P) - P||_inf / ||P||_2.
    """
    tau = rule.as_measure()
    wide = basis_for(basis, 2 * L)

    def fitted(i):
        P = random_polynomial(rule.manifold, L, trial_rng(seed, i))
        error = dense_sup_norm(sigma_discrete(wide, 2 * L, tau, P) - P)
        return L * error / norm_p(P)

    c = max(parallel_map(fitted, range(trials)))
    logger.info("📊 sigma_{2L} reproduction at L=%g: c=%.3e", L, c)
    return float(c)
