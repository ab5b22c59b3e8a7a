import numpy as np
import pytest

from qcuntz.analysis import (
    check_eigenvalue_laws,
    check_number_identity,
    check_shift_identity,
    check_structure_bc,
    commutant_dimension,
    relation_residuals,
    sample_intervals,
    series_check,
    series_number_operator,
    spectrum_check,
)
from qcuntz.analysis.identities import expected_d_sq
from qcuntz.rep import IntervalSet, OperatorFamily, corrupt_family
from qcuntz.rep.models import Label
from qcuntz.schemas.spec import BoundedPhiJ, Circle, FockQ1, FockQn, LineZ, UnboundedXJ
from qcuntz.words import EMPTY, Word

from tests.conftest import build


def families_at(q):
    families = [
        build(FockQ1(q=q), s_max=10),
        build(Circle(q=q, phi=2.0)),
        build(FockQn(q=q, n=3), L=3),
        build(BoundedPhiJ(q=q, n=2, j=2, phi=0.6), L=4),
    ]
    if q > 0:
        x = 1.0 / (1.0 - q) + 1.5
        families.append(build(LineZ(q=q, x=x), s_min=-3, s_max=3))
        families.append(build(UnboundedXJ(q=q, n=2, j=2, x=x), L=3, s_min=-3, s_max=3))
    return families


@pytest.mark.parametrize("q", [0.0, 0.3, 0.5, 0.9])
def test_relation_residuals_vanish(q):
    for family in families_at(q):
        report = relation_residuals(family)
        assert report.status == "pass", family
        assert report.max_residual <= 1e-12


@pytest.mark.parametrize("q", [0.0, 0.5, 0.9])
def test_structure_and_number_identities(q):
    for family in families_at(q):
        structure = check_structure_bc(family)
        assert structure.detail["commutator"] == 0.0
        assert structure.status == "pass", family
        assert check_number_identity(family).status == "pass", family
        assert check_eigenvalue_laws(family).status == "pass", family


def test_corrupted_weight_fails(unbounded_family):
    report = relation_residuals(corrupt_family(unbounded_family, 1e-3))
    assert report.status == "fail"
    assert report.max_residual > report.tolerance


def test_empty_interior_is_inconclusive():
    family = build(FockQ1(q=0.5), s_max=0)
    report = relation_residuals(family)
    assert report.status == "inconclusive"
    assert report.vectors_checked == 0
    assert not report.passed


def test_eigenvalue_laws_without_closed_form(fock1_family, circle_family):
    derived = OperatorFamily.direct_sum([fock1_family, circle_family])
    assert check_eigenvalue_laws(derived).status == "inconclusive"


def test_eigenvalue_examples(unbounded_family):
    family = build(FockQn(q=0.5, n=2), L=3)
    assert expected_d_sq(family, 1, Label(Word((2, 2, 1)))) == pytest.approx(1.5)
    assert expected_d_sq(family, 0, Label(Word((2, 2, 1)))) == 0.0

    ordinal = unbounded_family.basis.ordinal(Label(EMPTY, 0))
    assert expected_d_sq(unbounded_family, 1, Label(EMPTY, 0)) == 0.0
    AAH = (unbounded_family.A[1] @ unbounded_family.A_adj[1]).diagonal_values()
    assert AAH[ordinal] == 0.0


@pytest.mark.parametrize("q", [0.0, 0.5, 0.9])
def test_shift_identity_with_sampled_intervals(q):
    for family in families_at(q):
        for k in range(family.n):
            report = check_shift_identity(family, k, seed=7)
            assert report.status == "pass", (family, k)
            assert report.detail["intervals"] == 20


def test_shift_identity_on_fixed_intervals(unbounded_family, fock1_family):
    wide = [IntervalSet([(0.0, 100.0)])]
    for k in range(2):
        assert check_shift_identity(unbounded_family, k, wide).max_residual <= 1e-12
    vacuum = [IntervalSet.point(0.0)]
    assert check_shift_identity(fock1_family, 0, vacuum).max_residual <= 1e-12
    disjoint = [IntervalSet([(-9.0, -5.0)])]
    report = check_shift_identity(fock1_family, 0, disjoint)
    assert report.detail["projection"] == 0.0
    assert report.max_residual <= 1e-12


def test_sampled_intervals_are_deterministic(line_family):
    first = sample_intervals(line_family, 0, 5, seed=3)
    second = sample_intervals(line_family, 0, 5, seed=3)
    assert [repr(d) for d in first] == [repr(d) for d in second]


def test_spectrum_of_fock():
    family = build(FockQ1(q=0.5), s_max=6)
    report = spectrum_check(family, 0)
    assert report.status == "pass"
    expected = [(1 - 0.5 ** (m + 1)) / 0.5 for m in range(7)]
    assert report.detail["eigenvalues"] == pytest.approx(expected)


def test_spectrum_of_circle(circle_family):
    report = spectrum_check(circle_family, 0)
    assert report.status == "pass"
    assert report.detail["eigenvalues"] == pytest.approx([2.0])


def test_spectrum_of_line():
    family = build(LineZ(q=0.5, x=2.8), s_min=-2, s_max=2)
    report = spectrum_check(family, 0)
    assert report.status == "pass"
    assert report.detail["orbit"] <= 1e-12
    for value in (2.2, 2.4, 2.8, 3.6):
        assert any(abs(value - e) < 1e-12 for e in report.detail["eigenvalues"])


def test_spectrum_of_unbounded_family(unbounded_family):
    for k in range(2):
        assert spectrum_check(unbounded_family, k).status == "pass"


def test_series_on_fock():
    family = build(FockQ1(q=0.5), s_max=30)
    series, report = series_check(family, 0, K=20)
    assert report.status == "pass"
    assert report.detail["tail_bound"] == pytest.approx(0.5**21 / 0.5)
    assert report.detail["series_residual"] <= report.tolerance
    assert report.detail["discrepancy"] is True
    assert report.detail["linear_deviation"] > 0.1
    assert series.is_diagonal()


def test_series_on_bounded_families(bounded_family, circle_family):
    assert series_check(bounded_family, 0)[1].status == "pass"
    assert series_check(bounded_family, 1)[1].status == "pass"
    assert series_check(circle_family, 0)[1].status == "pass"


def test_series_partial_sums(fock1_family):
    S = fock1_family.S[0]
    assert np.allclose(series_number_operator(S, 0.5, 0).to_dense(), np.eye(fock1_family.size))
    two = series_number_operator(S, 0.5, 1).diagonal_values().real
    assert two[0] == pytest.approx(1.0)
    assert two[3] == pytest.approx(1.5)
    with pytest.raises(ValueError):
        series_number_operator(S, 0.5, -1)


def test_commutant_of_circle(circle_family):
    report = commutant_dimension(circle_family)
    assert report.dimension == 1
    assert report.heuristic


def test_commutant_of_irreducible_family(unbounded_family):
    report = commutant_dimension(unbounded_family)
    assert report.status == "pass"
    assert report.dimension == 1


def test_commutant_of_direct_sum(unbounded_family):
    other = build(UnboundedXJ(q=0.5, n=2, j=1, x=2.9), L=4, s_min=-4, s_max=4)
    report = commutant_dimension(OperatorFamily.direct_sum([unbounded_family, other]))
    assert report.status == "pass"
    assert report.dimension >= 2


def test_commutant_needs_a_deep_interior():
    report = commutant_dimension(build(FockQ1(q=0.5), s_max=3))
    assert report.status == "inconclusive"
    assert report.dimension is None


def test_series_error_decreases_with_the_number_of_terms():
    family = build(FockQ1(q=0.5), s_max=30)
    S, target = family.S[0], family.C_sq[0]
    ordinals = sorted(family.basis.interior(2))
    errors = [
        float(np.max((series_number_operator(S, 0.5, K) - target).column_norms(ordinals)))
        for K in range(21)
    ]
    assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
    assert errors[-1] <= 0.5**21 / 0.5 + 1e-12
