"""
Test the partition construction and its invariants.
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from manifolds import get_manifold, probe_grid
from measures import AtomicMeasure
from models.errors import (
    InvariantViolation,
    NotDominantError,
    OrphanPointsError,
    ScaleOutOfRangeError,
    SupportTooSparseError,
)
from pointsets import (
    PointSet,
    assert_partition,
    audit_partition,
    base_partition,
    build_mz_partition,
    dump_partition,
    equispaced_circle,
    jittered_circle,
    load_partition,
    merge_partition,
    trivial_partition,
)

CIRCLE = get_manifold("circle")
SPHERE = get_manifold("sphere2")


def equal_atoms(points):
    n = len(points)
    return AtomicMeasure(manifold=points.manifold, points=points.points, weights=np.full(n, 1.0 / n))


@pytest.fixture(scope="module")
def circle_partition():
    nu = equal_atoms(jittered_circle(2000, 0.3, seed=0))
    return nu, build_mz_partition(nu, 1.0 / 100.0)


def test_circle_partition_invariants(circle_partition):
    nu, partition = circle_partition
    audit = audit_partition(partition, nu)
    assert audit.covered
    assert audit.centers_in_cells
    assert audit.containment_ratio <= 81.0
    assert audit.nu_positive
    assert audit.b_hi / audit.b_lo <= 100.0
    assert audit.ok
    assert_partition(audit)
    print(f"✅ {audit.n_cells} cells, band ratio {audit.b_hi / audit.b_lo:.2f}")


def test_cell_masses_add_up(circle_partition):
    nu, partition = circle_partition
    assert partition.cell_mu.sum() == pytest.approx(1.0, abs=1e-12)
    assert partition.cell_nu.sum() == pytest.approx(1.0, abs=1e-12)


def test_partition_is_deterministic(circle_partition):
    nu, partition = circle_partition
    again = build_mz_partition(nu, 1.0 / 100.0)
    assert np.array_equal(again.final_centers.points, partition.final_centers.points)
    assert np.array_equal(again.cell_mu, partition.cell_mu)


def test_partition_dump_round_trip(circle_partition, tmp_path):
    nu, partition = circle_partition
    path = tmp_path / "partition.json"
    dump_partition(partition, path)
    again = load_partition(path)
    probes = probe_grid(CIRCLE, 1e-3).nodes
    assert np.array_equal(again.cell_of(probes), partition.cell_of(probes))


def test_scale_above_limit_needs_relax():
    nu = equal_atoms(equispaced_circle(400))
    with pytest.raises(ScaleOutOfRangeError):
        build_mz_partition(nu, 0.05)
    partition = build_mz_partition(nu, 0.05, relax_d=True)
    assert partition.n_cells >= 1


def test_sparse_support_rejected():
    nu = equal_atoms(equispaced_circle(10))
    with pytest.raises(SupportTooSparseError):
        build_mz_partition(nu, 0.01)


def test_trivial_partition_one_atom_per_cell():
    nu = equal_atoms(equispaced_circle(17))
    partition = trivial_partition(nu)
    assert partition.n_cells == 17
    assert np.array_equal(partition.cell_of(nu.nodes), np.arange(17))
    # grid nodes tie on the cell boundaries, so each cell is within a node or so of 1/17
    assert partition.cell_mu == pytest.approx(np.full(17, 1.0 / 17), abs=1e-2)


def test_failed_audit_names_checks():
    nu = equal_atoms(equispaced_circle(17))
    audit = audit_partition(trivial_partition(nu), nu).model_copy(update={"ok": False, "covered": False})
    with pytest.raises(InvariantViolation, match="cover"):
        assert_partition(audit)


@pytest.mark.slow
def test_sphere_partition_invariants():
    d = 1.0 / 81.0
    cloud = PointSet(SPHERE, probe_grid(SPHERE, d / 2.0).nodes)
    nu = equal_atoms(cloud)
    partition = build_mz_partition(nu, d, grid_factor=2.0)
    audit = audit_partition(partition, nu)
    assert audit.ok
    assert audit.b_hi / audit.b_lo <= 100.0


def test_base_partition_first_index():
    centers = equispaced_circle(8)
    cells = base_partition(centers, 0.4)
    # the midpoint between centers 0 and 1 goes to the lower index
    assert cells.labels(np.array([[np.pi / 8], [np.pi / 4]])).tolist() == [0, 1]
    with pytest.raises(OrphanPointsError):
        base_partition(centers, 0.1, probe_grid(CIRCLE, 0.01))


def test_merge_keeps_heavy_cells():
    centers = equispaced_circle(8)
    cells = base_partition(centers, 0.4)
    nodes = equispaced_circle(64).points
    result = merge_partition(centers, cells, (nodes, np.full(64, 1.0 / 64)), 1.0, 0.4)
    # every ball B(z, 0.4) holds 9 nodes; each center sees itself and its two neighbours
    assert result.m == pytest.approx(9 / 64)
    assert result.c == pytest.approx(1 / 3)
    assert len(result.G) == 8
    assert result.phi.tolist() == list(range(8))


def test_merge_rejects_massless_ball():
    centers = equispaced_circle(8)
    cells = base_partition(centers, 0.4)
    nodes = equispaced_circle(64).points
    masses = np.zeros(64)
    masses[:5] = 1.0
    with pytest.raises(NotDominantError):
        merge_partition(centers, cells, (nodes, masses), 1.0, 0.4)


def test_merge_preserves_tau_mass():
    centers = equispaced_circle(8)
    cells = base_partition(centers, 0.4)
    nodes = equispaced_circle(64).points
    masses = np.ones(64)
    # cell 3 owns nodes 21..28; node 20 ties and goes to cell 2
    masses[21:29] = 1e-3
    result = merge_partition(centers, cells, (nodes, masses), 1.0, 0.4)
    assert result.kept.tolist() == [0, 1, 2, 4, 5, 6, 7]
    assert result.phi[3] == 2
    before = np.bincount(cells.labels(nodes), weights=masses, minlength=8)
    after = np.bincount(result.phi[cells.labels(nodes)], weights=masses, minlength=7)
    assert after[2] == pytest.approx(before[2] + before[3], abs=1e-12)
    assert after.sum() == pytest.approx(masses.sum(), abs=1e-10)
    assert np.all(after >= result.threshold)


if __name__ == "__main__":
    test_trivial_partition_one_atom_per_cell()
    test_sparse_support_rejected()
    print("\n🎉 Partition checks passed")
