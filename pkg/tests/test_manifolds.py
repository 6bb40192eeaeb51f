"""
Test the model manifolds: distances, ball measures, eigenbases and reference rules.
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from manifolds import (
    GeodesicIndex,
    ball_measure,
    eigen_system,
    fit_ball_band,
    fit_doubling_constant,
    geodesic_distance,
    get_manifold,
    pairwise_distances,
    probe_grid,
    random_points,
    reference_quadrature,
)
from models.errors import UsageError

CIRCLE = get_manifold("circle")
SPHERE = get_manifold("sphere2")
TORUS = get_manifold("torus2")

angles = st.floats(min_value=-20.0, max_value=20.0, allow_nan=False)


def test_circle_distance_wraps():
    assert geodesic_distance(CIRCLE, 0.1, 2 * np.pi - 0.1) == pytest.approx(0.2, abs=1e-12)
    assert geodesic_distance(CIRCLE, 0.0, np.pi) == pytest.approx(np.pi)


def test_sphere_pole_to_equator():
    assert geodesic_distance(SPHERE, [0.0, 0.0], [np.pi / 2, 1.3]) == pytest.approx(np.pi / 2, abs=1e-12)


@given(angles, angles, angles)
def test_circle_triangle_inequality(a, b, c):
    ab = geodesic_distance(CIRCLE, a, b)
    bc = geodesic_distance(CIRCLE, b, c)
    ac = geodesic_distance(CIRCLE, a, c)
    assert ac <= ab + bc + 1e-12
    assert 0.0 <= ab <= np.pi + 1e-12


@given(angles, angles, angles, angles)
def test_torus_distance_symmetric(a, b, c, d):
    x, y = [a, b], [c, d]
    assert geodesic_distance(TORUS, x, y) == pytest.approx(geodesic_distance(TORUS, y, x), abs=1e-12)


def test_ball_measures():
    assert ball_measure(CIRCLE, 0.0, 0.5) == pytest.approx(0.5 / np.pi)
    assert ball_measure(CIRCLE, 0.0, 10.0) == 1.0
    assert ball_measure(SPHERE, [0.0, 0.0], np.pi / 2) == pytest.approx(0.5)
    assert ball_measure(TORUS, [0.0, 0.0], 0.5) == pytest.approx(0.25 / (4 * np.pi))
    assert ball_measure(TORUS, [0.0, 0.0], 5.0) == 1.0
    with pytest.raises(UsageError):
        ball_measure(CIRCLE, 0.0, -1.0)


def test_ball_band_and_doubling():
    band = fit_ball_band(SPHERE, samples=100)
    assert 0.0 < band.c_lo <= band.c_hi
    assert 0.0 < band.doubling <= 16.0
    print("✅ sphere ball band", band.c_lo, band.c_hi)


def test_doubling_constants():
    # arc length is linear up to the diameter
    assert fit_doubling_constant(CIRCLE) == pytest.approx(1.0, abs=1e-12)
    assert fit_doubling_constant(SPHERE) <= 1.0 + 1e-12
    assert fit_doubling_constant(TORUS) <= 16.0


def test_circle_basis_dimension():
    for L in (1, 3, 8):
        assert eigen_system(CIRCLE, L).dim == 2 * L + 1


def test_sphere_basis_dimension():
    # ell_l = sqrt(l (l + 1)): degrees 0..4 lie below 4.5
    assert eigen_system(SPHERE, 4.5).dim == 25


@pytest.mark.parametrize("m", [CIRCLE, SPHERE, TORUS], ids=lambda m: m.kind.value)
def test_reference_gram_is_identity(m):
    basis = eigen_system(m, 6)
    rule = reference_quadrature(m, 6)
    values = basis.evaluate(rule.nodes)
    gram = values.T @ (rule.weights[:, None] * values)
    assert np.max(np.abs(gram - np.eye(basis.dim))) <= 1e-10


def test_reference_quadrature_rejects_small_level():
    with pytest.raises(UsageError):
        reference_quadrature(CIRCLE, 0.5)


def test_geodesic_index_matches_brute_force():
    rng = np.random.default_rng(3)
    pts = random_points(SPHERE, 300, rng)
    queries = random_points(SPHERE, 20, rng)
    index = GeodesicIndex(SPHERE, pts)
    counts = index.count_within(queries, 0.4)
    brute = (pairwise_distances(SPHERE, queries, pts) <= 0.4).sum(axis=1)
    assert np.array_equal(counts, brute)


def test_probe_grid_weights_sum_to_one():
    for m in (CIRCLE, SPHERE, TORUS):
        grid = probe_grid(m, 0.1)
        assert grid.weights.sum() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("m", [SPHERE, TORUS])
def test_random_triples_satisfy_triangle_inequality(m):
    rng = np.random.default_rng(11)
    x, y, z = (random_points(m, 1000, rng) for _ in range(3))
    xy = geodesic_distance(m, x, y)
    yz = geodesic_distance(m, y, z)
    xz = geodesic_distance(m, x, z)
    assert np.all(xz <= xy + yz + 1e-12)


@pytest.mark.parametrize("m", [SPHERE, TORUS])
@pytest.mark.parametrize("r", [0.1, 1.0, 2.0])
def test_neighbourhood_matches_brute_force(m, r):
    # r = 2.0 puts more than KNN_CAP points in most balls
    rng = np.random.default_rng(5)
    pts = random_points(m, 600, rng)
    queries = random_points(m, 40, rng)
    index = GeodesicIndex(m, pts)
    D = pairwise_distances(m, queries, pts)
    clear = np.abs(D - r) > 1e-9
    closed = index.neighbourhood(queries, r).toarray() > 0
    opened = index.neighbourhood(queries, r, closed=False).toarray() > 0
    assert np.array_equal(closed[clear], (D <= r)[clear])
    assert np.array_equal(opened[clear], (D < r)[clear])
    assert np.array_equal(index.count_within(queries, r), closed.sum(axis=1))


if __name__ == "__main__":
    test_circle_distance_wraps()
    test_ball_measures()
    test_reference_quadrature_rejects_small_level()
    print("\n🎉 Manifold checks passed")
