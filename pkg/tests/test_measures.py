"""
Test signed measures, total variation and the regularity / dominance certificates.
"""

import json
import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from manifolds import ball_measure, get_manifold, probe_grid
from measures import (
    AtomicMeasure,
    ball_mass,
    cap_average_measure,
    discrete_set_measure,
    dominance_norm,
    dump_measure,
    load_measure,
    parse_measure,
    reconciliation_constant,
    regularity_norm,
    support_mesh_norm,
    total_variation,
    uniform_measure,
    weighted_density_measure,
    zero_measure,
)
from models.errors import EmptySupportError, UsageError
from pointsets import arc_circle, equispaced_circle, jittered_circle, mesh_norm

CIRCLE = get_manifold("circle")
SPHERE = get_manifold("sphere2")


def equal_atoms(points):
    n = len(points)
    return AtomicMeasure(manifold=points.manifold, points=points.points, weights=np.full(n, 1.0 / n))


def test_atomic_total_variation():
    nu = AtomicMeasure(manifold=CIRCLE, points=[0.0, 1.0, 2.0], weights=[0.5, -0.25, 0.25])
    assert total_variation(nu) == pytest.approx(1.0)
    assert not nu.is_zero


def test_mismatched_atoms_rejected():
    with pytest.raises(UsageError):
        AtomicMeasure(manifold=CIRCLE, points=[0.0, 1.0], weights=[1.0])


def test_density_sin_abs_total_variation():
    nu = weighted_density_measure(CIRCLE, "sin_abs")
    assert total_variation(nu) == pytest.approx(2.0 / np.pi, abs=1e-6)
    print("✅ |sin| density total variation", total_variation(nu))


def test_signed_density_uses_absolute_values():
    nu = weighted_density_measure(CIRCLE, "sin")
    assert abs(float(nu.masses.sum())) <= 1e-10
    assert total_variation(nu) == pytest.approx(2.0 / np.pi, abs=1e-6)


def test_uniform_measure_balls_match_mu():
    nu = uniform_measure(SPHERE)
    assert ball_mass(nu, [0.3, 1.0], 0.5) == pytest.approx(ball_measure(SPHERE, [0.0, 0.0], 0.5), rel=0.05)


def test_equispaced_atoms_regularity():
    nu = equal_atoms(equispaced_circle(64))
    d = 0.5
    cert = regularity_norm(nu, d)
    # a closed ball of radius d holds at most floor(2d / gap) + 1 atoms
    gap = 2 * np.pi / 64
    assert cert.R_norm <= (np.floor(2 * d / gap) + 1) / 64 / d + 1e-12
    assert not dominance_norm(nu, d).dominance_infinite


def test_half_circle_dominance_is_infinite():
    nu = equal_atoms(arc_circle(33, 0.0, np.pi))
    cert = dominance_norm(nu, 0.25)
    assert cert.dominance_infinite
    assert cert.D_norm == float("inf")


def test_zero_measure():
    nu = zero_measure(CIRCLE)
    assert nu.is_zero
    assert regularity_norm(nu, 0.1).R_norm == 0.0
    assert dominance_norm(nu, 0.1).dominance_infinite


@given(st.floats(min_value=0.05, max_value=1.0), st.floats(min_value=0.05, max_value=1.0))
def test_regularity_monotone_in_scale_mass(d1, d2):
    nu = equal_atoms(equispaced_circle(32))
    lo, hi = sorted((d1, d2))
    centers = np.linspace(0.0, 2 * np.pi, 50, endpoint=False)
    small = regularity_norm(nu, lo, centers).R_norm * lo
    large = regularity_norm(nu, hi, centers).R_norm * hi
    assert small <= large + 1e-12


def test_reconciliation_constant_bounded():
    nu = equal_atoms(equispaced_circle(64))
    c = reconciliation_constant(nu, 0.2, samples=50)
    assert 0.0 < c < 10.0


def test_builders():
    pts = equispaced_circle(16).points
    discrete = discrete_set_measure(CIRCLE, pts)
    assert discrete.weights.shape == (16,)
    cap = cap_average_measure(CIRCLE, pts, radius_fraction=0.5)
    assert total_variation(cap) == pytest.approx(cap.exact_total(), rel=1e-2)
    with pytest.raises(UsageError):
        cap_average_measure(CIRCLE, pts, radius_fraction=0.1)


def test_measure_file_round_trip(tmp_path):
    nu = AtomicMeasure(manifold=CIRCLE, points=[0.0, 1.0], weights=[0.75, 0.25], name="pair")
    path = tmp_path / "pair.json"
    dump_measure(nu, path)
    again = load_measure(path)
    assert np.allclose(again.points, nu.points)
    assert np.allclose(again.weights, nu.weights)


def test_bad_measure_documents():
    with pytest.raises(UsageError):
        parse_measure("{not json")
    with pytest.raises(UsageError):
        parse_measure(json.dumps({"type": "atomic", "manifold": "klein", "atoms": []}))


def test_support_mesh_norm_of_equispaced_atoms():
    nu = equal_atoms(equispaced_circle(16))
    # farthest point from the support is a midpoint, pi/16 away
    assert abs(support_mesh_norm(nu, resolution=1e-3) - np.pi / 16) <= 1e-3
    with pytest.raises(EmptySupportError):
        support_mesh_norm(zero_measure(CIRCLE))


def mesh_of(points):
    return mesh_norm(points, probe_grid(CIRCLE, CIRCLE.diameter / 1024))


def test_discrete_set_measure_regular_and_dominant():
    for seed in range(10):
        C = jittered_circle(30, 0.3, seed=seed)
        nu = discrete_set_measure(CIRCLE, C.points)
        d = 2.0 * mesh_of(C)
        R = regularity_norm(nu, d)
        D = dominance_norm(nu, d)
        assert not D.dominance_infinite
        # equal atoms: the heaviest ball holds at most every atom, the lightest at least one
        assert np.isfinite(R.R_norm * D.D_norm)
        assert R.R_norm * D.D_norm <= len(C)


def test_cap_average_measure_regular_and_dominant():
    for seed in range(10):
        C = jittered_circle(30, 0.3, seed=seed)
        nu = cap_average_measure(CIRCLE, C.points, 0.5)
        d = 3.0 * mesh_of(C)
        R = regularity_norm(nu, d)
        D = dominance_norm(nu, d)
        assert not D.dominance_infinite
        assert R.R_norm * D.D_norm <= 2 * len(C)


def test_weighted_density_follows_weight_bounds():
    # smooth_positive is 1.5 + sin, between 0.5 and 2.5
    nu = weighted_density_measure(CIRCLE, "smooth_positive")
    mu = uniform_measure(CIRCLE)
    for d in (0.05, 0.2, 1.0):
        r_ratio = regularity_norm(nu, d).R_norm / regularity_norm(mu, d).R_norm
        d_ratio = dominance_norm(nu, d).D_norm / dominance_norm(mu, d).D_norm
        assert 0.5 * 0.95 <= r_ratio <= 2.5 * 1.05
        assert 0.95 / 2.5 <= d_ratio <= 1.05 / 0.5


if __name__ == "__main__":
    test_atomic_total_variation()
    test_density_sin_abs_total_variation()
    test_half_circle_dominance_is_infinite()
    print("\n🎉 Measure checks passed")
