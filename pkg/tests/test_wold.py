import numpy as np
import pytest

from qcuntz.analysis import QWold, q_wold
from qcuntz.exceptions import RejectInputError
from qcuntz.rep import OperatorFamily, permutation_family
from qcuntz.schemas.spec import BoundedPhiJ, FockQ1, LineZ

from tests.conftest import build


@pytest.fixture(scope="module")
def planted():
    return OperatorFamily.direct_sum(
        [
            build(FockQ1(q=0.5), s_max=5),
            permutation_family([1, 2, 0], 0.5),
            build(LineZ(q=0.5, x=2.8), s_min=-2, s_max=4),
        ]
    )


def test_planted_blocks_are_recovered(planted):
    interior = planted.basis.interior(2, [0])
    result = q_wold(planted.A[0], planted.q, interior=interior, x0=3.0)

    assert len(result.fock_blocks) == 1
    assert result.fock_blocks[0].labels == list(range(6))
    assert result.fock_blocks[0].chain_length == 6

    assert result.unitary_block.present
    assert result.unitary_block.dimension == 3
    assert result.unitary_block.labels == [6, 7, 8]

    assert len(result.unbounded_blocks) == 1
    block = result.unbounded_blocks[0]
    assert block.x == pytest.approx(2.8)
    assert block.eigenvalues == pytest.approx([2.2, 2.4, 2.8])
    assert block.labels == list(range(9, 16))

    assert result.boundary == []
    covered = sorted(ordinal for part in result.partition() for ordinal in part)
    assert covered == list(range(planted.size))


def test_pure_fock_is_one_chain(fock1_family):
    interior = fock1_family.basis.interior(2)
    result = q_wold(fock1_family.A[0], fock1_family.q, interior=interior)
    assert len(result.fock_blocks) == 1
    (ordinal, re, im) = result.fock_blocks[0].vacuum[0]
    assert ordinal == 0
    assert abs(complex(re, im)) == pytest.approx(1.0)
    assert not result.unitary_block.present
    assert result.unbounded_blocks == []


def test_pure_unitary_block():
    family = permutation_family([1, 0], 0.3)
    result = q_wold(family.A[0], 0.3)
    assert result.fock_blocks == []
    assert result.unitary_block.dimension == 2
    assert result.unbounded_blocks == []
    assert result.boundary == []


def test_orbit_value_is_normalized():
    family = build(LineZ(q=0.5, x=2.2), s_min=-3, s_max=3)
    result = q_wold(family.A[0], 0.5, interior=family.basis.interior(2), x0=3.0)
    assert len(result.unbounded_blocks) == 1
    assert result.unbounded_blocks[0].x == pytest.approx(2.8)


def test_random_matrix_is_rejected():
    A = np.random.default_rng(0).normal(size=(5, 5))
    with pytest.raises(RejectInputError) as info:
        q_wold(A, 0.5)
    assert info.value.residual > 1e-3


def test_runner_keeps_its_chains(fock1_family):
    runner = QWold(fock1_family.A[0], fock1_family.q, interior=fock1_family.basis.interior(2))
    runner.run()
    assert len(runner.chains) == 1
    assert runner.unitary_span is None


def test_planted_blocks_survive_a_permutation(planted):
    perm = [int(i) for i in np.random.default_rng(5).permutation(planted.size)]
    shuffled = planted.permuted(perm)
    interior = shuffled.basis.interior(2, [0])
    result = q_wold(shuffled.A[0], shuffled.q, interior=interior, x0=3.0)

    def original(labels):
        return sorted(perm[i] for i in labels)

    assert original(result.fock_blocks[0].labels) == list(range(6))
    assert original(result.unitary_block.labels) == [6, 7, 8]
    assert original(result.unbounded_blocks[0].labels) == list(range(9, 16))
    assert result.unbounded_blocks[0].x == pytest.approx(2.8, abs=1e-10)


def test_rerun_on_a_recovered_block_returns_that_block(planted):
    interior = planted.basis.interior(2, [0])
    A = planted.A[0].to_dense()
    result = q_wold(A, planted.q, interior=interior, x0=3.0)
    blocks = [block.labels for block in result.fock_blocks]
    blocks.append(result.unitary_block.labels)
    blocks.extend(block.labels for block in result.unbounded_blocks)

    for labels in blocks:
        local = [i for i, ordinal in enumerate(labels) if ordinal in interior]
        again = q_wold(A[np.ix_(labels, labels)], planted.q, interior=local, x0=3.0)
        parts = again.partition()
        assert parts[-1] == []
        assert parts[:-1] == [list(range(len(labels)))]

    again = q_wold(A[9:16, 9:16], planted.q, interior=[2, 3, 4], x0=3.0)
    assert again.unbounded_blocks[0].x == pytest.approx(2.8)


def test_unitary_vacuum_is_found_when_its_eigenvalue_is_shared():
    # at q = 0 the vacuum value 1/(1 - q) equals the Fock value of boundary words
    family = build(BoundedPhiJ(q=0.0, n=2, j=1, phi=0.25), L=3)
    result = q_wold(family.A[0], 0.0, interior=family.basis.interior(2, [0]))
    assert result.unitary_block.dimension == 1
    assert result.unitary_block.labels == [0]
    assert len(result.fock_blocks) == 1
