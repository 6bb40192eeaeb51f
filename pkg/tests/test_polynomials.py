"""
Test diffusion polynomials, their norms and the classical inequalities.
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from manifolds import get_manifold, random_points
from measures import AtomicMeasure
from models.errors import TruncationError, UsageError
from models.pydantic_models import ManifoldKind
from polynomials import (
    bernstein_ratio,
    christoffel,
    constant_polynomial,
    dense_sup_norm,
    dump_polynomial,
    format_polynomial,
    gradient_norm_at,
    load_polynomial,
    mu_integral_power,
    nikolskii_ratio,
    norm_p,
    parse_polynomial,
    product_leakage,
    random_polynomial,
    trig_polynomial,
)

CIRCLE = get_manifold("circle")
SPHERE = get_manifold("sphere2")


@pytest.mark.parametrize("L", [8, 16, 32])
def test_bernstein_ratio_is_one(L):
    ratio = bernstein_ratio(L, trials=50)
    assert 1.0 - 1e-9 <= ratio <= 1.0 + 1e-6


def test_christoffel_circle_is_exact():
    x = np.linspace(0.0, 2 * np.pi, 13)
    for L in range(1, 65):
        assert np.allclose(christoffel(CIRCLE, L, x), 2 * L + 1, atol=1e-9)


def test_christoffel_sphere_is_constant():
    x = random_points(SPHERE, 40, np.random.default_rng(3))
    values = christoffel(SPHERE, 5, x)
    assert np.ptp(values) <= 1e-8
    print("✅ sphere Christoffel sum", values[0])


def test_product_leakage_circle():
    rng = np.random.default_rng(0)
    for _ in range(100):
        Q = random_polynomial(CIRCLE, 16, rng)
        R = random_polynomial(CIRCLE, 16, rng)
        assert product_leakage(Q, R).l2 <= 1e-12


def test_product_leakage_sphere():
    rng = np.random.default_rng(1)
    for _ in range(20):
        Q = random_polynomial(SPHERE, 3, rng)
        R = random_polynomial(SPHERE, 3, rng)
        assert product_leakage(Q, R).l2 <= 1e-10


def test_product_leakage_detects_truncation():
    # cos(8 t)^2 carries cos(16 t), outside Pi_8
    P = trig_polynomial(8, cos_terms={8: 1.0})
    assert product_leakage(P, P, Astar=1.0).l2 > 0.1


def test_parseval_matches_quadrature():
    P = random_polynomial(SPHERE, 4, 7)
    assert norm_p(P) ** 2 == pytest.approx(mu_integral_power(P, 2.0), rel=1e-10)


def test_dense_sup_of_cosine():
    P = trig_polynomial(8, cos_terms={8: 1.0})
    assert dense_sup_norm(P) == pytest.approx(1.0, abs=1e-12)
    assert norm_p(P, p=np.inf) == pytest.approx(1.0, abs=1e-12)


def test_trig_polynomial_values():
    P = trig_polynomial(3, cos_terms={1: 2.0}, sin_terms={3: -1.0}, constant=0.5)
    t = np.array([0.0, 0.7, 2.1])
    assert np.allclose(P(t), 0.5 + 2.0 * np.cos(t) - np.sin(3 * t), atol=1e-12)


def test_derivative_on_circle():
    P = trig_polynomial(4, cos_terms={2: 1.0}, sin_terms={4: 3.0})
    t = np.linspace(0.0, 6.0, 9)
    assert np.allclose(P.derivative()(t), -2.0 * np.sin(2 * t) + 12.0 * np.cos(4 * t), atol=1e-10)
    assert trig_polynomial(1, cos_terms={1: 1.0}).derivative()(np.pi / 2) == pytest.approx(-1.0, abs=1e-12)
    # the derivative agrees with the basis gradient, signs included
    Q = random_polynomial(CIRCLE, 6, np.random.default_rng(4))
    assert np.allclose(Q.derivative()(t), Q.gradient(t[:, None])[:, 0], atol=1e-10)
    with pytest.raises(UsageError):
        random_polynomial(SPHERE, 2).derivative()


def test_gradient_norm_on_circle():
    P = trig_polynomial(2, cos_terms={2: 1.0})
    t = np.array([0.1, 0.8, 2.5])
    assert np.allclose(gradient_norm_at(P, t), np.abs(2.0 * np.sin(2 * t)), atol=1e-10)


def test_random_polynomial_is_seeded():
    a = random_polynomial(CIRCLE, 6, 11)
    b = random_polynomial(CIRCLE, 6, 11)
    assert np.array_equal(a.coefficients, b.coefficients)
    with pytest.raises(UsageError):
        random_polynomial(CIRCLE, 0.5)


def test_lift_and_arithmetic():
    low = constant_polynomial(ManifoldKind.CIRCLE, 2.0)
    high = trig_polynomial(5, cos_terms={5: 1.0})
    total = high + low
    assert total.L == 5.0
    assert np.allclose(total(np.array([0.0])), 3.0)
    assert np.allclose((total - high).coefficients[0], 2.0)
    with pytest.raises(TruncationError):
        high.lift(2)


def test_norm_against_measure_uses_total_variation():
    nu = AtomicMeasure(manifold=CIRCLE, points=[[0.0], [np.pi]], weights=[0.5, -0.5])
    P = constant_polynomial(CIRCLE, 3.0)
    assert norm_p(P, nu, p=1.0) == pytest.approx(3.0)
    assert norm_p(P, nu, p=np.inf) == pytest.approx(3.0)


def test_norm_exponent_checked():
    with pytest.raises(UsageError):
        norm_p(constant_polynomial(CIRCLE), p=0.5)


def test_polynomial_text_round_trip(tmp_path):
    P = random_polynomial(SPHERE, 3, 5)
    path = tmp_path / "p.poly"
    dump_polynomial(P, path)
    Q = load_polynomial(path)
    assert Q.L == P.L
    assert np.array_equal(Q.coefficients, P.coefficients)


def test_polynomial_text_errors(tmp_path):
    with pytest.raises(UsageError):
        parse_polynomial("0 1 0.5\n")
    with pytest.raises(UsageError):
        parse_polynomial("manifold: circle\nL: 2\n1 c\n")
    with pytest.raises(UsageError):
        load_polynomial(tmp_path / "missing.poly")
    assert format_polynomial(constant_polynomial(CIRCLE, 0.0)).count("\n") == 2


def test_nikolskii_slope_circle():
    report = nikolskii_ratio(CIRCLE, [8, 16, 32, 64], p=2.0, r=np.inf, trials=5)
    assert report.claimed_slope == pytest.approx(0.5)
    assert abs(report.slope - report.claimed_slope) <= 0.1
    assert all(r >= e for r, e in zip(report.ratios, report.extremal_ratios))


def test_nikolskii_validates_exponents():
    with pytest.raises(UsageError):
        nikolskii_ratio(CIRCLE, [8], p=2.0, r=1.0)


def test_norms_increase_with_exponent():
    rng = np.random.default_rng(6)
    for m, L in ((CIRCLE, 12), (SPHERE, 4)):
        for _ in range(5):
            P = random_polynomial(m, L, rng)
            norms = [norm_p(P, p=p) for p in (1.0, 2.0, 4.0, np.inf)]
            assert all(a <= b * (1 + 1e-9) + 1e-12 for a, b in zip(norms, norms[1:]))


@pytest.mark.parametrize("m,L", [(CIRCLE, 16), (SPHERE, 8)])
def test_random_polynomial_mean_square_norm_is_dimension(m, L):
    rng = np.random.default_rng(8)
    draws = [random_polynomial(m, L, rng) for _ in range(200)]
    dim = draws[0].coefficients.size
    mean = np.mean([norm_p(P) ** 2 for P in draws])
    assert abs(mean - dim) <= 0.1 * dim


if __name__ == "__main__":
    test_christoffel_circle_is_exact()
    test_dense_sup_of_cosine()
    test_product_leakage_detects_truncation()
    print("\n🎉 Polynomial checks passed")
