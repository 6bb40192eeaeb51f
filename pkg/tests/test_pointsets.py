"""
Test separated subsets, mesh norm, separation and overlap counts.
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from manifolds import get_manifold, pairwise_distances, probe_grid
from models.errors import UsageError
from pointsets import (
    PointSet,
    arc_circle,
    dump_point_set,
    equispaced_circle,
    jittered_circle,
    load_point_set,
    max_separated_subset,
    mesh_norm,
    min_separation,
    overlap_count,
    parse_point_set,
    random_cloud,
)

CIRCLE = get_manifold("circle")
SPHERE = get_manifold("sphere2")


def test_equispaced_mesh_and_separation():
    C = equispaced_circle(16)
    gap = 2 * np.pi / 16
    assert min_separation(C) == pytest.approx(gap)
    assert mesh_norm(C, probe_grid(CIRCLE, 1e-4)) == pytest.approx(gap / 2, abs=1e-4)


@given(st.integers(min_value=0, max_value=2**31), st.floats(min_value=0.05, max_value=0.8))
def test_separated_subset_properties(seed, eps):
    samples = random_cloud(SPHERE, 300, seed)
    subset = max_separated_subset(samples, eps)
    if len(subset) >= 2:
        assert min_separation(subset) >= eps - 1e-12
    # every sample is within eps of a kept point
    nearest = pairwise_distances(SPHERE, samples.points, subset.points).min(axis=1)
    assert np.all(nearest < eps + 1e-12)


def test_separated_subset_is_greedy_in_input_order():
    C = PointSet(CIRCLE, np.array([[0.0], [0.05], [0.2], [0.21]]))
    kept = max_separated_subset(C, 0.1)
    assert np.allclose(kept.points[:, 0], [0.0, 0.2])


def test_separated_subset_rejects_bad_input():
    with pytest.raises(UsageError):
        max_separated_subset(equispaced_circle(4), 0.0)


def test_duplicates_give_zero_separation():
    C = PointSet(CIRCLE, np.array([[1.0], [1.0], [2.0]]))
    assert min_separation(C) == 0.0


def test_overlap_count_equispaced():
    C = equispaced_circle(32)
    gap = 2 * np.pi / 32
    # a closed ball of radius gap around a node holds the node and both neighbours
    assert overlap_count(C, gap * 1.0001, C.points) == 3


def test_jittered_points_stay_in_their_slots():
    C = jittered_circle(40, 0.3, seed=5)
    gap = 2 * np.pi / 40
    slots = np.round(C.points[:, 0] / gap) % 40
    assert len(np.unique(slots)) == 40
    with pytest.raises(UsageError):
        jittered_circle(40, 0.6)


def test_arc_points():
    C = arc_circle(5, 0.0, np.pi)
    assert np.allclose(C.points[:, 0], np.linspace(0.0, np.pi, 5))


def test_point_set_file_round_trip(tmp_path):
    C = random_cloud(SPHERE, 10, 1)
    path = tmp_path / "cloud.txt"
    dump_point_set(C, path)
    again = load_point_set(path)
    assert again.manifold.kind == C.manifold.kind
    assert np.allclose(again.points, C.points)


def test_point_set_parse_errors():
    with pytest.raises(UsageError):
        parse_point_set("0.1 0.2\n")
    with pytest.raises(UsageError):
        parse_point_set("manifold: sphere2\n0.1\n")
    with pytest.raises(UsageError):
        parse_point_set("manifold: moebius\n")
    C = parse_point_set("manifold: circle\n# angle\n0.5\n1.5  # trailing\n")
    assert len(C) == 2


def test_appended_duplicates_do_not_change_subset():
    samples = random_cloud(SPHERE, 300, 9)
    doubled = PointSet(SPHERE, np.concatenate([samples.points, samples.points[:50]]))
    for eps in (0.1, 0.4):
        assert np.array_equal(max_separated_subset(doubled, eps).points, max_separated_subset(samples, eps).points)


if __name__ == "__main__":
    test_equispaced_mesh_and_separation()
    test_overlap_count_equispaced()
    print("\n🎉 Point-set checks passed")
