"""
The acceptance battery run by verify-all. Every check returns (passed, details).
"""

import logging
import time
from typing import Callable, Dict, List, NamedTuple, Tuple

import numpy as np

from kernels import localization_report, sigma_op
from manifolds import eigen_system, get_manifold, probe_grid, random_points
from measures import AtomicMeasure, dominance_norm, uniform_measure
from models.errors import MZLabError, QuadratureInfeasibleError
from models.pydantic_models import AcceptanceCheck, ManifoldKind
from mzanalysis import characterization_roundtrip, mz_constants_p2, sup_norm_gap, verify_strong_mz
from pointsets import (
    PointSet,
    arc_circle,
    audit_partition,
    build_mz_partition,
    equispaced_circle,
    jittered_circle,
    trivial_partition,
)
from polynomials import (
    bernstein_ratio,
    christoffel,
    norm_p,
    product_leakage,
    random_polynomial,
    trig_polynomial,
)
from quadrature import solve_positive_quadrature

logger = logging.getLogger(__name__)

CIRCLE = get_manifold(ManifoldKind.CIRCLE)
SPHERE = get_manifold(ManifoldKind.SPHERE2)


def equal_atoms(points: PointSet, name: str = "atoms") -> AtomicMeasure:
    n = len(points)
    return AtomicMeasure(manifold=points.manifold, points=points.points, weights=np.full(n, 1.0 / n), name=name)


def exact_mz_p2() -> Tuple[bool, Dict]:
    nu = equal_atoms(equispaced_circle(65))
    report = mz_constants_p2(nu, eigen_system(CIRCLE, 32), 32)
    passed = abs(report.c1 - 1.0) <= 1e-10 and abs(report.c2 - 1.0) <= 1e-10
    return passed, {"c1": report.c1, "c2": report.c2}


def quadrature_existence(seed: int = 0) -> Tuple[bool, Dict]:
    L = 8
    nu = equal_atoms(jittered_circle(4 * L, 0.3, seed))
    partition = build_mz_partition(nu, 2.0 * np.pi / (4 * L), relax_d=True)
    rule = solve_positive_quadrature(nu, partition, eigen_system(CIRCLE, L), L)
    tau = rule.as_measure()
    worst = 0.0
    for i in range(50):
        P = random_polynomial(CIRCLE, L, np.random.default_rng([seed, i]))
        worst = max(worst, abs(float(tau.masses @ P(tau.nodes)) - P.coefficients[0]))
    passed = (rule.residual <= 1e-8 and rule.min_weight_ratio >= 0.05
              and bool(np.all(rule.weights >= 0)) and worst <= 1e-8)
    return passed, {"cells": rule.n_weights, "residual": rule.residual,
                    "min_weight_ratio": rule.min_weight_ratio, "exactness_error": worst}


def kernel_localization() -> Tuple[bool, Dict]:
    report = localization_report(CIRCLE, [16, 32, 64, 128], S=5, heat_times=(0.2, 0.1))
    c5 = [row.c_by_S["5"] for row in report.rows[:3]]
    sup_l1 = [row.sup_l1 for row in report.rows]
    c_spread, l1_spread = max(c5) / min(c5), max(sup_l1) / min(sup_l1)
    return c_spread <= 2.0 and l1_spread <= 1.1, {"c5_spread": c_spread, "sup_l1_spread": l1_spread}


def reproduction() -> Tuple[bool, Dict]:
    worst = 0.0
    for L in (8, 32):
        basis = eigen_system(CIRCLE, 2 * L)
        for i in range(50):
            P = random_polynomial(CIRCLE, L, np.random.default_rng([L, i]))
            worst = max(worst, norm_p(sigma_op(basis, 2 * L, P) - P))
    return worst <= 1e-10, {"max_l2_error": worst}


def product_closure() -> Tuple[bool, Dict]:
    rng = np.random.default_rng(0)
    circle = max(product_leakage(random_polynomial(CIRCLE, 16, rng), random_polynomial(CIRCLE, 16, rng)).l2
                 for _ in range(100))
    sphere = max(product_leakage(random_polynomial(SPHERE, 3, rng), random_polynomial(SPHERE, 3, rng)).l2
                 for _ in range(20))
    return circle <= 1e-12 and sphere <= 1e-10, {"circle": circle, "sphere": sphere}


def _partition_ok(nu, d: float, grid_factor: float) -> Dict:
    partition = build_mz_partition(nu, d, relax_d=True, grid_factor=grid_factor)
    audit = audit_partition(partition, nu)
    return {"ok": audit.ok and audit.b_hi / audit.b_lo <= 100.0, "cells": audit.n_cells,
            "band_ratio": audit.b_hi / audit.b_lo}


def partition_invariants(include_sphere: bool = True) -> Tuple[bool, Dict]:
    details = {"circle": _partition_ok(equal_atoms(jittered_circle(2000, 0.3, 0)), 1.0 / 100.0, 4.0)}
    if include_sphere:
        d = 1.0 / 81.0
        cloud = PointSet(SPHERE, probe_grid(SPHERE, d / 2.0).nodes)
        details["sphere"] = _partition_ok(equal_atoms(cloud), d, 2.0)
    return all(entry["ok"] for entry in details.values()), details


def bernstein() -> Tuple[bool, Dict]:
    ratios = {str(L): bernstein_ratio(L) for L in (8, 16, 32)}
    return all(1.0 - 1e-9 <= r <= 1.0 + 1e-6 for r in ratios.values()), ratios


def strong_mz_scaling(L: float = 8.0) -> Tuple[bool, Dict]:
    products = (0.1, 0.05, 0.025)
    slopes = {}
    for p in (1.0, 2.0):
        etas = []
        for Ld in products:
            d = Ld / L
            nu = equal_atoms(jittered_circle(int(np.ceil(4.0 * np.pi / d)), 0.3, 0))
            partition = build_mz_partition(nu, d, relax_d=True)
            etas.append(verify_strong_mz(nu, partition, CIRCLE, L, p, trials=10).eta_observed)
        slopes[str(p)] = float(np.polyfit(np.log(products), np.log(etas), 1)[0])
    return all(abs(s - 1.0) <= 0.3 for s in slopes.values()), slopes


def christoffel_check() -> Tuple[bool, Dict]:
    points = random_points(CIRCLE, 50, np.random.default_rng(0))
    circle_error = max(float(np.max(np.abs(christoffel(CIRCLE, L, points) - (2 * L + 1))))
                       for L in range(1, 65))
    values = christoffel(SPHERE, 8, random_points(SPHERE, 50, np.random.default_rng(0)))
    sphere_spread = float((values.max() - values.min()) / values.mean())
    return circle_error <= 1e-9 and sphere_spread <= 1e-8, {"circle_error": circle_error,
                                                             "sphere_spread": sphere_spread}


def roundtrip() -> Tuple[bool, Dict]:
    L = 8
    report = characterization_roundtrip(uniform_measure(CIRCLE), CIRCLE, L)
    constants = {"upper": report.upper_constant, "regularity": report.regularity_constant,
                 "lower": report.lower_constant, "dominance": report.dominance_constant, "c1": report.c1}
    in_band = all(c is not None and 0.99 <= c <= 1.01 for c in constants.values())

    base = equal_atoms(equispaced_circle(65))
    weights = base.weights.copy()
    weights[0] *= 2.0
    doubled = AtomicMeasure(manifold=CIRCLE, points=base.points, weights=weights, name="doubled")
    before = characterization_roundtrip(base, CIRCLE, L)
    after = characterization_roundtrip(doubled, CIRCLE, L)
    same_sign = np.sign(after.R_ratio - before.R_ratio) == np.sign(after.c2 - before.c2) != 0
    return bool(in_band and same_sign), {**constants, "R_shift": after.R_ratio - before.R_ratio,
                                         "c2_shift": after.c2 - before.c2}


def sup_norm_gap_closed_form() -> Tuple[bool, Dict]:
    details, passed = {}, True
    for L, N in ((8, 64), (16, 64)):
        nu = equal_atoms(equispaced_circle(N, offset=np.pi / N))
        gap = sup_norm_gap(nu, CIRCLE, L, trials=0, extra=[trig_polynomial(L, cos_terms={L: 1.0})]).gap
        expected = 1.0 - np.cos(L * np.pi / N)
        details[f"{L}_{N}"] = gap
        passed = passed and abs(gap - expected) <= 1e-9
    return passed, details


def negative_control() -> Tuple[bool, Dict]:
    L = 4
    nu = equal_atoms(arc_circle(33, 0.0, np.pi))
    dominance = dominance_norm(nu, 1.0 / L)
    c1 = mz_constants_p2(nu, CIRCLE, L).c1
    try:
        rule = solve_positive_quadrature(nu, trivial_partition(nu), CIRCLE, L)
        quad_flag, residual = rule.residual > 1e-3, rule.residual
    except QuadratureInfeasibleError as e:
        quad_flag, residual = True, e.residual
    passed = dominance.dominance_infinite and c1 <= 1e-3 and quad_flag
    return passed, {"dominance_infinite": dominance.dominance_infinite, "c1": c1,
                    "quadrature_flagged": quad_flag, "residual": residual}


class Check(NamedTuple):
    name: str
    run: Callable[[], Tuple[bool, Dict]]
    slow: bool = False


CHECKS: List[Check] = [
    Check("exact_mz_p2", exact_mz_p2),
    Check("quadrature_existence", quadrature_existence),
    Check("kernel_localization", kernel_localization),
    Check("reproduction", reproduction),
    Check("product_closure", product_closure),
    Check("partition_invariants", partition_invariants, slow=True),
    Check("bernstein", bernstein),
    Check("strong_mz_scaling", strong_mz_scaling),
    Check("christoffel", christoffel_check),
    Check("roundtrip", roundtrip),
    Check("sup_norm_gap", sup_norm_gap_closed_form),
    Check("negative_control", negative_control),
]


def run_check(check: Check) -> AcceptanceCheck:
    start = time.perf_counter()
    try:
        passed, details = check.run()
        error = None
    except MZLabError as e:
        passed, details, error = False, {}, f"{type(e).__name__}: {e}"
    seconds = time.perf_counter() - start
    marker = "✅" if passed else "❌"
    logger.info("%s %s (%.1fs)", marker, check.name, seconds)
    return AcceptanceCheck(name=check.name, passed=bool(passed), seconds=seconds,
                           details={k: _plain(v) for k, v in details.items()}, error=error)


def _plain(value):
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    return value
