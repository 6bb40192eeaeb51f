"""
Test positive quadrature on partitions: moments, the LP and NNLS routes, certificates,
verification and rule files.
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from manifolds import eigen_system, get_manifold
from measures import AtomicMeasure
from models.errors import OrderShortfallError, QuadratureInfeasibleError, UsageError
from pointsets import arc_circle, build_mz_partition, equispaced_circle, jittered_circle, trivial_partition
from polynomials import random_polynomial
from quadrature import (
    FunctionalKind,
    QuadratureMode,
    cell_average_operator,
    cell_functional_matrix,
    dump_rule,
    format_rule,
    load_rule,
    load_rule_measure,
    moments,
    parse_rule,
    quadrature_residual,
    refine_weights,
    sigma_reproduction_error,
    solve_positive_quadrature,
    verify_quadrature_mz,
)
from src.config import settings

CIRCLE = get_manifold("circle")
L = 8


def equal_atoms(points, name="atoms"):
    n = len(points)
    return AtomicMeasure(manifold=points.manifold, points=points.points, weights=np.full(n, 1.0 / n), name=name)


@pytest.fixture(scope="module")
def jittered_setup():
    nu = equal_atoms(jittered_circle(4 * L, 0.3, seed=0))
    partition = build_mz_partition(nu, 2.0 * np.pi / (4 * L), relax_d=True)
    return nu, partition


@pytest.fixture(scope="module")
def jittered_rule(jittered_setup):
    nu, partition = jittered_setup
    return solve_positive_quadrature(nu, partition, eigen_system(CIRCLE, L), L)


@pytest.fixture(scope="module")
def exact_rule():
    # 65 equispaced nodes integrate Pi_64 exactly; the rule has order 32
    nu = equal_atoms(equispaced_circle(65))
    return solve_positive_quadrature(nu, trivial_partition(nu), CIRCLE, 32,
                                     kind=FunctionalKind.POINT_EVALUATION)


def test_moments_are_unit_vector():
    b = moments(CIRCLE, 3)
    assert len(b) == 7
    assert b.values[0] == 1.0
    assert not np.any(b.values[1:])


def test_cell_average_rows_sum_to_one(jittered_setup):
    nu, partition = jittered_setup
    op = cell_average_operator(partition, nu)
    assert np.allclose(op @ np.ones(nu.nodes.shape[0]), 1.0)
    A = cell_functional_matrix(partition, nu, CIRCLE, L)
    assert A.shape == (2 * L + 1, partition.n_cells)
    assert np.allclose(A[0], 1.0)


def test_equispaced_weights_are_uniform():
    nu = equal_atoms(equispaced_circle(17))
    rule = solve_positive_quadrature(nu, trivial_partition(nu), CIRCLE, L)
    assert rule.n_weights == 17
    assert np.allclose(rule.weights, 1.0 / 17.0, atol=1e-10)
    assert rule.residual <= 1e-12


def test_jittered_rule_is_positive_and_exact(jittered_rule):
    rule = jittered_rule
    assert rule.residual <= 1e-8
    assert rule.min_weight_ratio >= 0.05
    assert np.all(rule.weights >= 0)
    assert rule.achieved_t is not None

    tau = rule.as_measure()
    worst = 0.0
    for i in range(50):
        P = random_polynomial(CIRCLE, L, np.random.default_rng([0, i]))
        worst = max(worst, abs(float(tau.masses @ P(tau.nodes)) - P.coefficients[0]))
    assert worst <= 1e-8
    print("✅ cells:", rule.n_weights, "min W/mu:", rule.min_weight_ratio)


def test_summary_reports_the_rule(jittered_rule):
    summary = jittered_rule.summary()
    assert summary.mode == "LP_maximin"
    assert summary.kind == "CellAverage"
    assert summary.weight_sum == pytest.approx(1.0, abs=1e-8)


def test_lp_beats_nnls_on_smallest_weight(jittered_setup, jittered_rule):
    nu, partition = jittered_setup
    nnls_rule = solve_positive_quadrature(nu, partition, CIRCLE, L, mode=QuadratureMode.NNLS)
    assert nnls_rule.achieved_t is None
    assert jittered_rule.min_weight_ratio >= nnls_rule.min_weight_ratio - 1e-6


def test_large_problems_fall_back_to_nnls(jittered_setup, monkeypatch):
    nu, partition = jittered_setup
    monkeypatch.setattr(settings, "lp_max_variables", 3)
    rule = solve_positive_quadrature(nu, partition, CIRCLE, L)
    assert rule.mode is QuadratureMode.NNLS
    assert rule.residual <= 1e-8


def test_half_circle_is_infeasible_with_certificate():
    nu = equal_atoms(arc_circle(33, 0.0, np.pi))
    with pytest.raises(QuadratureInfeasibleError) as info:
        solve_positive_quadrature(nu, trivial_partition(nu), CIRCLE, 4)
    direction = info.value.direction
    assert direction is not None
    # nonnegative on every atom yet with negative mean
    assert np.all(direction(nu.nodes) >= -1e-7)
    assert direction.coefficients[0] < 0


def test_refine_weights_keeps_better_solution():
    A = np.array([[1.0, 1.0], [1.0, -1.0]])
    b = np.array([1.0, 0.0])
    W, residual = refine_weights(A, b, np.array([0.5 + 1e-6, 0.5]))
    assert residual <= 1e-14
    assert np.allclose(W, 0.5)


def test_residual_recomputed_from_measure(jittered_rule):
    assert quadrature_residual(jittered_rule, CIRCLE, L) == pytest.approx(jittered_rule.residual, abs=1e-12)


def test_solution_is_deterministic(jittered_setup, jittered_rule):
    nu, partition = jittered_setup
    again = solve_positive_quadrature(nu, partition, eigen_system(CIRCLE, L), L)
    assert np.array_equal(again.weights, jittered_rule.weights)


def test_verify_exact_rule(exact_rule):
    report = verify_quadrature_mz(exact_rule, CIRCLE, 8)
    assert report.c1 == pytest.approx(1.0, abs=1e-10)
    assert report.c2 == pytest.approx(1.0, abs=1e-10)
    assert report.fitted_constants["product_error"] <= 1e-10
    assert report.fitted_constants["order"] == 32.0
    with pytest.raises(OrderShortfallError):
        verify_quadrature_mz(exact_rule, CIRCLE, 9)


def test_verify_jittered_rule(jittered_rule):
    # order 8 closes products in Pi_2
    report = verify_quadrature_mz(jittered_rule, CIRCLE, 2)
    assert report.c1 >= 0.2
    assert report.c2 <= 5.0
    assert report.fitted_constants["product_error"] <= 1e-6


def test_sigma_reproduction_of_exact_rule(exact_rule):
    assert sigma_reproduction_error(exact_rule, CIRCLE, 8, trials=3) <= 1e-10


def test_rule_file_round_trip(tmp_path, exact_rule):
    path = dump_rule(exact_rule, tmp_path / "rules" / "exact.rule")
    loaded = load_rule(path)
    assert loaded.L == exact_rule.L
    assert loaded.kind is FunctionalKind.POINT_EVALUATION
    assert np.array_equal(loaded.weights, exact_rule.weights)
    assert np.allclose(loaded.points, exact_rule.points, atol=1e-15)
    assert np.isnan(loaded.min_weight_ratio)

    tau = load_rule_measure(path)
    assert tau.name == "exact"
    assert tau.masses.sum() == pytest.approx(1.0, abs=1e-12)


def test_rule_file_errors(exact_rule):
    text = format_rule(exact_rule)
    with pytest.raises(UsageError):
        parse_rule(text.replace("kind: PointEvaluation\n", ""))
    with pytest.raises(UsageError):
        parse_rule("manifold: circle\nL: 2\nkind: PointEvaluation\nmode: NNLS\n0 0.5 -0.1\n")
    with pytest.raises(UsageError):
        parse_rule("manifold: circle\nL: 2\nkind: PointEvaluation\nmode: NNLS\n0 0.5\n")


@pytest.mark.parametrize("level", [8, 16, 32])
def test_sigma_reproduction_through_computed_rule(level):
    # sigma_{2L} of a degree-L polynomial needs exactness up to 3L
    n = 16 * level
    nu = equal_atoms(jittered_circle(n, 0.3, seed=level))
    partition = build_mz_partition(nu, 2.0 * np.pi / n, relax_d=True)
    rule = solve_positive_quadrature(nu, partition, eigen_system(CIRCLE, 3 * level), 3 * level)
    assert sigma_reproduction_error(rule, CIRCLE, level, trials=3) <= 1e-2


if __name__ == "__main__":
    test_moments_are_unit_vector()
    test_equispaced_weights_are_uniform()
    test_half_circle_is_infeasible_with_certificate()
    print("\n🎉 Quadrature checks passed")
