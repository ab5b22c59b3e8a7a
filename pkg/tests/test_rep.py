import cmath
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from qcuntz.analysis import relation_residuals
from qcuntz.exceptions import InvalidSpecError, InvalidTruncationError, StructureError
from qcuntz.rep import (
    Basis,
    IntervalSet,
    OperatorFamily,
    SparseOperator,
    build_basis,
    corrupt_family,
    number_operators,
    permutation_family,
    polar_isometry,
    spectral_resolution,
)
from qcuntz.rep.models import Label
from qcuntz.schemas.spec import (
    BoundedPhiJ,
    Circle,
    FockQ1,
    FockQn,
    UnboundedXJ,
    make_spec,
    make_truncation,
)
from qcuntz.words import EMPTY, m_k

from tests.conftest import build


def test_basis_sizes():
    unbounded = UnboundedXJ(q=0.5, n=2, j=1, x=2.8)
    assert build_basis(unbounded, make_truncation(L=2, s_min=-1, s_max=1)).size == 12
    assert build_basis(Circle(q=0.5, phi=0.0), make_truncation()).size == 1
    assert build_basis(FockQn(q=0.5, n=2), make_truncation(L=2)).size == 7


def test_basis_labels_print_word_and_level():
    basis = build_basis(
        UnboundedXJ(q=0.5, n=2, j=1, x=2.8), make_truncation(L=1, s_min=-1, s_max=0)
    )
    assert [str(label) for label in basis.labels] == ["[]@-1", "[2]@-1", "[]@0", "[2]@0"]


def test_fock_interior_depths(fock1_family):
    basis = fock1_family.basis
    assert sorted(basis.interior(1)) == list(range(8))
    assert sorted(basis.interior(2)) == list(range(7))
    assert basis.interior(2) <= basis.interior(1)


def test_line_interior_depths(line_family):
    levels = [line_family.basis.label(i).level for i in sorted(line_family.basis.interior(2))]
    assert levels == [-2, -1, 0, 1, 2]


def test_invalid_specs_are_rejected():
    with pytest.raises(InvalidSpecError):
        make_spec(family="unbounded", q=0.0, n=2, j=1, x=2.8)
    with pytest.raises(InvalidSpecError):
        make_spec(family="line", q=0.5, x=2.0)
    with pytest.raises(InvalidSpecError):
        make_spec(family="bounded", q=0.5, n=2, j=3, phi=0.1)
    with pytest.raises(InvalidSpecError):
        make_spec(family="fock1", q=1.0)
    with pytest.raises(InvalidTruncationError):
        make_truncation(L=1, s_min=2, s_max=1)


def test_fock_q0_is_the_unilateral_shift():
    family = build(FockQ1(q=0.0), s_max=8)
    expected = np.diag(np.ones(8), k=-1)
    assert np.array_equal(family.A[0].to_dense(), expected)


def test_polar_isometry_of_fock(fock1_family):
    S = polar_isometry(fock1_family.A[0]).to_dense()
    assert np.allclose(S, np.diag(np.ones(8), k=-1))


def test_polar_isometry_of_circle():
    phi = 0.7
    family = build(Circle(q=0.5, phi=phi))
    assert family.A[0].to_dense()[0, 0] == pytest.approx(cmath.exp(1j * phi) * math.sqrt(2.0))
    assert family.S[0].to_dense()[0, 0] == pytest.approx(cmath.exp(1j * phi))


def test_polar_isometry_edge_cases():
    assert polar_isometry(SparseOperator.zeros(3)).nnz == 0
    with pytest.raises(StructureError):
        polar_isometry(SparseOperator(np.ones((2, 2))))


def test_number_identity_holds_on_every_label(all_families):
    for family in all_families:
        C_sq, D_sq = number_operators(family)
        for C, D in zip(C_sq, D_sq):
            assert np.allclose(C.diagonal_values(), 1.0 + family.q * D.diagonal_values())


def test_spectral_resolution_of_non_distinguished_generator(unbounded_family):
    resolution = unbounded_family.resolutions[1]
    q = unbounded_family.q
    expected = [0.0] + [(1 - q**m) / (1 - q) for m in range(1, 5)]
    assert resolution.eigenvalues == pytest.approx(expected)


def test_spectral_resolution_of_zero():
    resolution = spectral_resolution(SparseOperator.zeros(4))
    assert resolution.eigenvalues == [0.0]
    assert resolution.subsets == [(0, 1, 2, 3)]


def test_bounded_vacuum_eigenvalue(bounded_family):
    ordinal = bounded_family.basis.ordinal(Label(EMPTY))
    assert bounded_family.D_sq[0].diagonal_values()[ordinal].real == pytest.approx(2.0)


def test_apply_E(unbounded_family):
    resolution = unbounded_family.resolutions[1]
    everything = resolution.apply_E(IntervalSet.everything())
    assert np.array_equal(everything.to_dense(), np.eye(unbounded_family.size))

    kernel = resolution.apply_E(IntervalSet.point(0.0), atol=1e-12).diagonal_values().real
    expected = [1.0 if m_k(2, label.word) == 0 else 0.0 for label in unbounded_family.basis.labels]
    assert kernel.tolist() == expected

    assert resolution.apply_E(IntervalSet([(-5.0, -1.0), (10.0, 20.0)])).nnz == 0


def test_permuted_family_conjugates_generators(fockn_family):
    perm = list(reversed(range(fockn_family.size)))
    permuted = fockn_family.permuted(perm)
    for k in range(fockn_family.n):
        original = fockn_family.A[k].to_dense()
        assert np.allclose(permuted.A[k].to_dense(), original[np.ix_(perm, perm)])
    assert permuted.basis.labels == fockn_family.basis.labels[::-1]
    assert relation_residuals(permuted).status == "pass"


def test_direct_sum(fock1_family, circle_family):
    total = OperatorFamily.direct_sum([fock1_family, circle_family])
    assert total.size == fock1_family.size + 1
    assert total.spec is None
    assert total.basis.labels[-1] == (1, circle_family.basis.labels[0])
    assert relation_residuals(total).status == "pass"


def test_direct_sum_needs_equal_q(fock1_family):
    with pytest.raises(StructureError):
        OperatorFamily.direct_sum([fock1_family, build(FockQ1(q=0.3), s_max=3)])


def test_corrupt_family_breaks_the_relation(fockn_family):
    corrupted = corrupt_family(fockn_family, 1e-3)
    report = relation_residuals(corrupted)
    assert report.status == "fail"
    assert not report.passed


def test_permutation_family_is_a_scaled_unitary():
    family = permutation_family([1, 2, 0], q=0.5)
    A = family.A[0].to_dense()
    assert np.allclose(A.conj().T @ A, 2.0 * np.eye(3))
    assert A[1, 0] == pytest.approx(math.sqrt(2.0))
    assert relation_residuals(family).status == "pass"


def test_operator_json_is_sorted(fock1_family):
    data = fock1_family.A[0].to_json()
    assert data["rows"] == data["cols"] == 9
    assert [entry[:2] for entry in data["entries"]] == [[m + 1, m] for m in range(8)]
    assert data["entries"][0][2] == pytest.approx(1.0)


def test_operator_json_must_be_square():
    with pytest.raises(StructureError):
        SparseOperator.from_json({"rows": 2, "cols": 3, "entries": []})


def test_basis_rejects_duplicate_labels():
    with pytest.raises(InvalidTruncationError):
        Basis(["a", "a"], [[None, None]], [[None, None]])


def test_bounded_weight_carries_the_phase():
    family = build(BoundedPhiJ(q=0.5, n=2, j=2, phi=0.25), L=1)
    ordinal = family.basis.ordinal(Label(EMPTY))
    weight = family.A[1].to_dense()[ordinal, ordinal]
    assert weight == pytest.approx(1j * math.sqrt(2.0))


@pytest.mark.parametrize(
    "spec, L",
    [
        (FockQn(q=0.0, n=2), 3),
        (FockQn(q=0.0, n=3), 2),
        (BoundedPhiJ(q=0.0, n=2, j=1, phi=0.25), 3),
        (BoundedPhiJ(q=0.0, n=3, j=3, phi=0.5), 2),
    ],
)
def test_q0_generators_are_their_isometric_parts(spec, L):
    family = build(spec, L=L)
    for k in range(family.n):
        A = family.A[k].to_dense()
        assert np.array_equal(A, family.S[k].to_dense())
        assert set(np.abs(A[A != 0])) == {1.0}
    report = relation_residuals(family)
    assert report.max_residual == 0.0


def test_interior_cache_is_shared_across_threads():
    basis = build(UnboundedXJ(q=0.5, n=2, j=1, x=2.8), L=4, s_min=-4, s_max=4).basis
    depths = [d % 4 for d in range(32)]
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(basis.interior, depths))
    assert results == [basis.interior(d) for d in depths]
    assert basis.interior(3) <= basis.interior(2) <= basis.interior(1)

