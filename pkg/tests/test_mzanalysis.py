"""
Test the MZ constants: Gram route, sampled bounds, sup-norm gap, strong MZ and the
regularity / dominance round trip.
"""

import os
import sys
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest
from pydantic import ValidationError

from manifolds import eigen_system, get_manifold
from measures import AtomicMeasure, uniform_measure, zero_measure
from models.errors import DimensionCapError, EmptySupportError, UsageError
from models.pydantic_models import MZReport
from mzanalysis import (
    cell_mu_integrals,
    cell_nu_integrals,
    characterization_roundtrip,
    mz_constants_p2,
    mz_ratio_bounds,
    phi_tail_mass,
    scale_equivalence,
    sup_norm_gap,
    trial_polynomials,
    verify_strong_mz,
)
from pointsets import arc_circle, audit_partition, build_mz_partition, equispaced_circle, jittered_circle
from polynomials import trig_polynomial
from src.config import settings

CIRCLE = get_manifold("circle")


def equal_atoms(points, name="atoms"):
    n = len(points)
    return AtomicMeasure(manifold=points.manifold, points=points.points, weights=np.full(n, 1.0 / n), name=name)


def test_equispaced_atoms_are_exact():
    nu = equal_atoms(equispaced_circle(65))
    report = mz_constants_p2(nu, eigen_system(CIRCLE, 32), 32)
    assert report.method == "GramExact_p2"
    assert report.c1 == pytest.approx(1.0, abs=1e-10)
    assert report.c2 == pytest.approx(1.0, abs=1e-10)
    print("✅ c1 =", report.c1, "c2 =", report.c2)


def test_gram_cap(monkeypatch):
    monkeypatch.setattr(settings, "gram_cap", 5)
    with pytest.raises(DimensionCapError):
        mz_constants_p2(equal_atoms(equispaced_circle(17)), CIRCLE, 8)


def test_zero_measure_rejected():
    with pytest.raises(EmptySupportError):
        mz_constants_p2(zero_measure(CIRCLE), CIRCLE, 4)
    with pytest.raises(EmptySupportError):
        mz_ratio_bounds(zero_measure(CIRCLE), CIRCLE, 4)


def test_sampled_bounds_lie_inside_gram_bounds():
    nu = equal_atoms(jittered_circle(64, 0.3, seed=4))
    exact = mz_constants_p2(nu, CIRCLE, 8)
    sampled = mz_ratio_bounds(nu, CIRCLE, 8, p=2.0, trials=30, seed=1)
    assert sampled.method == "Sampled"
    assert sampled.c1 >= exact.c1 - 1e-9
    assert sampled.c2 <= exact.c2 + 1e-9


def test_trial_polynomials_include_extremals():
    nu = equal_atoms(equispaced_circle(33))
    polys = trial_polynomials(nu, CIRCLE, 8, trials=3, seed=0)
    assert len(polys) == 3 + 4
    again = trial_polynomials(nu, CIRCLE, 8, trials=3, seed=0)
    assert all(np.array_equal(a.coefficients, b.coefficients) for a, b in zip(polys, again))


def test_half_circle_has_no_lower_constant():
    nu = equal_atoms(arc_circle(33, 0.0, np.pi))
    assert mz_constants_p2(nu, CIRCLE, 4).c1 <= 1e-3


@pytest.mark.parametrize("L,N", [(8, 64), (16, 64)])
def test_sup_norm_gap_closed_form(L, N):
    nu = equal_atoms(equispaced_circle(N, offset=np.pi / N))
    report = sup_norm_gap(nu, CIRCLE, L, trials=0, extra=[trig_polynomial(L, cos_terms={L: 1.0})])
    assert report.gap == pytest.approx(1.0 - np.cos(L * np.pi / N), abs=1e-9)
    assert report.trials == 1


def test_cell_integrals_sum_to_totals():
    nu = equal_atoms(jittered_circle(200, 0.3, seed=2))
    partition = build_mz_partition(nu, 0.1, relax_d=True)
    ones = lambda pts: np.ones(pts.shape[0])
    assert cell_mu_integrals(partition, ones).sum() == pytest.approx(1.0, abs=1e-10)
    assert cell_nu_integrals(partition, ones, nu).sum() == pytest.approx(1.0, abs=1e-12)


def test_strong_mz_report_fields():
    nu = equal_atoms(jittered_circle(400, 0.3, seed=0))
    partition = build_mz_partition(nu, 0.05, relax_d=True)
    report = verify_strong_mz(nu, partition, CIRCLE, 8, p=1.0, trials=5, pointwise=True)
    assert report.Ld == pytest.approx(8 * partition.d)
    assert 0.0 <= report.eta_observed < 1.0
    assert report.eta_pointwise is not None
    assert report.gradient_overlap is not None
    with pytest.raises(UsageError):
        verify_strong_mz(nu, partition, CIRCLE, 8, p=np.inf)


@pytest.mark.slow
def test_strong_mz_error_scales_linearly():
    L = 8.0
    products = (0.1, 0.05, 0.025)
    for p in (1.0, 2.0):
        etas = []
        for Ld in products:
            d = Ld / L
            nu = equal_atoms(jittered_circle(int(np.ceil(4.0 * np.pi / d)), 0.3, seed=0))
            partition = build_mz_partition(nu, d, relax_d=True)
            etas.append(verify_strong_mz(nu, partition, CIRCLE, L, p, trials=10).eta_observed)
        slope = np.polyfit(np.log(products), np.log(etas), 1)[0]
        assert abs(slope - 1.0) <= 0.3


def test_roundtrip_for_mu_itself():
    report = characterization_roundtrip(uniform_measure(CIRCLE), CIRCLE, 8)
    assert not report.dominance_infinite
    for value in (report.upper_constant, report.regularity_constant, report.lower_constant,
                  report.dominance_constant, report.c1):
        assert 0.99 <= value <= 1.01
    assert set(report.converse_constants) == {str(S) for S in range(2, 8)}


def test_roundtrip_tracks_a_heavier_atom():
    base = equal_atoms(equispaced_circle(65))
    weights = base.weights.copy()
    weights[0] *= 2.0
    doubled = AtomicMeasure(manifold=CIRCLE, points=base.points, weights=weights, name="doubled")
    before = characterization_roundtrip(base, CIRCLE, 8)
    after = characterization_roundtrip(doubled, CIRCLE, 8)
    assert after.R_ratio > before.R_ratio
    assert after.c2 > before.c2


def test_roundtrip_flags_half_circle():
    report = characterization_roundtrip(equal_atoms(arc_circle(33, 0.0, np.pi)), CIRCLE, 4)
    assert report.dominance_infinite
    assert report.lower_constant is None
    assert report.dominance_constant is None


def test_phi_tail_mass_decreases():
    tails = phi_tail_mass(CIRCLE, 16)
    values = [tails[str(r)] for r in (1, 2, 4, 8)]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert values[-1] < values[0]


def test_scale_equivalence_of_mu():
    assert scale_equivalence(uniform_measure(CIRCLE), 0.05) == pytest.approx(1.0 / 3.0, rel=0.05)


def test_mz_report_rejects_inconsistent_constants():
    fields = dict(manifold="circle", L=8.0, measure_id="atoms")
    MZReport(p=2.0, method="GramExact_p2", c1=0.5, c2=2.0, **fields)
    with pytest.raises(ValidationError, match="out of order"):
        MZReport(p=2.0, method="Sampled", c1=2.0, c2=0.5, **fields)
    with pytest.raises(ValidationError, match=">= 0"):
        MZReport(p=2.0, method="Sampled", c1=-0.1, c2=0.5, **fields)
    with pytest.raises(ValidationError, match="p = 2 only"):
        MZReport(p=1.0, method="GramExact_p2", c1=0.5, c2=2.0, **fields)


def test_partitioned_atoms_inherit_mz_constants():
    nu = equal_atoms(jittered_circle(200, 0.3, seed=1))
    partition = build_mz_partition(nu, 4 * np.pi / 200, relax_d=True)
    assert audit_partition(partition, nu).ok
    for L in (4, 8, 15):
        report = mz_constants_p2(nu, eigen_system(CIRCLE, L), L)
        assert report.c1 > 0.1
        assert report.c2 < 10.0


if __name__ == "__main__":
    test_equispaced_atoms_are_exact()
    test_half_circle_has_no_lower_constant()
    test_roundtrip_for_mu_itself()
    print("\n🎉 MZ analysis checks passed")
