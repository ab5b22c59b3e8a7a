"""Heuristic irreducibility signal from the commutant of a truncation.

Unknowns are matrices ``X`` on the interior-depth-2 vectors that are block
diagonal for the joint spectral clusters of all ``D_k^2``, which makes them
commute with every spectral projection ``E_k(delta)``. Commutation with the
compressed ``S_k`` and ``S_k*`` is then imposed, and the dimension reported
is the rank of the solution space read on the deeper interior (depth 3),
where truncation cannot free extra entries.
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import sparse

from qcuntz import setting
from qcuntz.rep.family import OperatorFamily
from qcuntz.schemas.report import CommutantReport

logger = logging.getLogger(__name__)

MIN_CORE = 4


def commutant_dimension(family: OperatorFamily, tol: Optional[float] = None) -> CommutantReport:
    tol = setting.WOLD_TOL if tol is None else tol
    basis = family.basis
    interior = sorted(basis.interior(2))
    core = sorted(basis.interior(3))

    def report(status: str, dimension: Optional[int] = None, **detail) -> CommutantReport:
        return CommutantReport(
            dimension=dimension,
            status=status,
            tolerance=tol,
            basis_size=family.size,
            interior_size=len(interior),
            detail={"core_size": len(core), **detail},
        )

    if family.size == 1:
        return report("pass", 1)
    if len(core) < MIN_CORE:
        return report("inconclusive", reason=f"fewer than {MIN_CORE} deep interior vectors")
    if len(interior) > setting.COMMUTANT_MAX:
        return report(
            "inconclusive",
            reason=f"interior of {len(interior)} vectors exceeds {setting.COMMUTANT_MAX}",
        )

    pairs = _allowed_pairs(family, interior)
    K = _constraints(family, interior, pairs)
    gram = (K.conj().T @ K).toarray()
    w, V = np.linalg.eigh(gram)
    solutions = V[:, w <= tol]

    position = {ordinal: i for i, ordinal in enumerate(interior)}
    core_set = set(core)
    rows = [
        index
        for index, (a, b) in enumerate(pairs)
        if interior[a] in core_set and interior[b] in core_set
    ]
    dimension = int(np.linalg.matrix_rank(solutions[rows, :], tol=np.sqrt(tol))) if rows else 0
    logger.debug(
        "Commutant on %d interior vectors: %d unknowns, dimension %d",
        len(position),
        len(pairs),
        dimension,
    )
    return report("pass", dimension, unknowns=len(pairs), solution_space=int(solutions.shape[1]))


def _allowed_pairs(family: OperatorFamily, interior: List[int]) -> List[Tuple[int, int]]:
    signature: Dict[int, Tuple[int, ...]] = {}
    for ordinal in interior:
        signature[ordinal] = tuple(
            _cluster_index(resolution, ordinal) for resolution in family.resolutions
        )
    return [
        (a, b)
        for a, va in enumerate(interior)
        for b, vb in enumerate(interior)
        if signature[va] == signature[vb]
    ]


def _cluster_index(resolution, ordinal: int) -> int:
    for index, subset in enumerate(resolution.subsets):
        if ordinal in subset:
            return index
    raise KeyError(ordinal)


def _constraints(
    family: OperatorFamily, interior: List[int], pairs: List[Tuple[int, int]]
) -> sparse.csr_matrix:
    """Rows of ``vec(X T - T X) = 0`` for every compressed ``T``, one column per pair."""
    m = len(interior)
    blocks = []
    for k in range(family.n):
        S = family.S[k].matrix.tocsr()[interior][:, interior].toarray()
        for T in (S, S.conj().T):
            rows, cols, data = [], [], []
            for column, (a, b) in enumerate(pairs):
                # E_ab T puts row b of T into row a
                for c in np.flatnonzero(T[b]):
                    rows.append(a * m + c)
                    cols.append(column)
                    data.append(T[b, c])
                # T E_ab puts column a of T into column b
                for r in np.flatnonzero(T[:, a]):
                    rows.append(r * m + b)
                    cols.append(column)
                    data.append(-T[r, a])
            blocks.append(
                sparse.coo_matrix((data, (rows, cols)), shape=(m * m, len(pairs)), dtype=complex)
            )
    return sparse.vstack(blocks, format="csr")
