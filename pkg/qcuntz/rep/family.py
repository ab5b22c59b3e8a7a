import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse

from qcuntz.exceptions import StructureError
from qcuntz.rep.basis import OUTSIDE, Basis
from qcuntz.rep.operator import SparseOperator, polar_isometry
from qcuntz.rep.spectral import SpectralResolution, spectral_resolution
from qcuntz.schemas.spec import RepSpec, TruncationParams

logger = logging.getLogger(__name__)


class OperatorFamily:
    """Truncated generators ``A_k`` of one representation and their derived parts.

    ``C_sq`` and ``D_sq`` are taken from the untruncated weights, so a
    boundary label keeps the eigenvalue it has in the full representation
    even though its column (or row) is cut off in ``A``.
    """

    _q: float
    _basis: Basis
    _A: List[SparseOperator]
    _A_adj: List[SparseOperator]
    _S: List[SparseOperator]
    _C_sq: List[SparseOperator]
    _D_sq: List[SparseOperator]
    _resolutions: List[SpectralResolution]
    _spec: Optional[RepSpec]
    _trunc: Optional[TruncationParams]

    def __init__(
        self,
        q: float,
        basis: Basis,
        A: Sequence[SparseOperator],
        C_sq: Optional[Sequence[SparseOperator]] = None,
        D_sq: Optional[Sequence[SparseOperator]] = None,
        spec: Optional[RepSpec] = None,
        trunc: Optional[TruncationParams] = None,
    ) -> None:
        if len(A) != basis.n:
            raise StructureError(f"Expected {basis.n} generators, got {len(A)}")
        self._q = q
        self._basis = basis
        self._A = list(A)
        self._A_adj = [a.adjoint() for a in self._A]
        self._S = [polar_isometry(a) for a in self._A]
        if C_sq is None or D_sq is None:
            C_sq, D_sq = _closed_form_diagonals(basis)
        self._C_sq = list(C_sq)
        self._D_sq = list(D_sq)
        self._resolutions = [spectral_resolution(d, basis=basis) for d in self._D_sq]
        self._spec = spec
        self._trunc = trunc

    @property
    def q(self) -> float:
        return self._q

    @property
    def n(self) -> int:
        return self._basis.n

    @property
    def size(self) -> int:
        return self._basis.size

    @property
    def basis(self) -> Basis:
        return self._basis

    @property
    def spec(self) -> Optional[RepSpec]:
        return self._spec

    @property
    def trunc(self) -> Optional[TruncationParams]:
        return self._trunc

    @property
    def A(self) -> List[SparseOperator]:
        return self._A

    @property
    def A_adj(self) -> List[SparseOperator]:
        return self._A_adj

    @property
    def S(self) -> List[SparseOperator]:
        return self._S

    @property
    def C_sq(self) -> List[SparseOperator]:
        return self._C_sq

    @property
    def D_sq(self) -> List[SparseOperator]:
        return self._D_sq

    @property
    def resolutions(self) -> List[SpectralResolution]:
        return self._resolutions

    @classmethod
    def build(cls, spec: RepSpec, trunc: TruncationParams) -> "OperatorFamily":
        basis = Basis.build(spec, trunc)
        A = [_generator_matrix(basis, k) for k in range(basis.n)]
        family = cls(spec.q, basis, A, spec=spec, trunc=trunc)
        logger.debug("Built %s on %d vectors", spec.label(), basis.size)
        return family

    def permuted(self, perm: Sequence[int]) -> "OperatorFamily":
        basis = self._basis.permuted(perm)
        return OperatorFamily(
            self._q,
            basis,
            [a.permuted(perm, basis) for a in self._A],
            [c.permuted(perm, basis) for c in self._C_sq],
            [d.permuted(perm, basis) for d in self._D_sq],
            spec=self._spec,
            trunc=self._trunc,
        )

    @classmethod
    def direct_sum(cls, families: Sequence["OperatorFamily"]) -> "OperatorFamily":
        q = families[0].q
        if any(family.q != q for family in families):
            raise StructureError("Direct summands must share q")
        basis = Basis.direct_sum([family.basis for family in families])

        def stack(parts: Sequence[SparseOperator]) -> SparseOperator:
            return SparseOperator(sparse.block_diag([p.matrix for p in parts], format="csr"), basis)

        n = basis.n
        return cls(
            q,
            basis,
            [stack([family.A[k] for family in families]) for k in range(n)],
            [stack([family.C_sq[k] for family in families]) for k in range(n)],
            [stack([family.D_sq[k] for family in families]) for k in range(n)],
        )

    def __repr__(self) -> str:
        name = self._spec.label() if self._spec is not None else "derived"
        return f"OperatorFamily({name}, q={self._q}, size={self.size})"


def build_generators(spec: RepSpec, trunc: TruncationParams) -> OperatorFamily:
    return OperatorFamily.build(spec, trunc)


def number_operators(family: OperatorFamily) -> Tuple[List[SparseOperator], List[SparseOperator]]:
    return family.C_sq, family.D_sq


def corrupt_family(family: OperatorFamily, eps: float, generator: int = 0) -> OperatorFamily:
    basis = family.basis
    interior = sorted(basis.interior(2))
    matrix = family.A[generator].matrix.tocsc()
    for column in interior:
        start, end = matrix.indptr[column], matrix.indptr[column + 1]
        if end > start:
            matrix = matrix.copy()
            matrix.data[start] *= 1.0 + eps
            break
    else:
        raise StructureError("No interior weight available to corrupt")
    A = list(family.A)
    A[generator] = SparseOperator(matrix, basis)
    logger.debug("Corrupted generator %d at ordinal %d by %g", generator + 1, column, eps)
    return OperatorFamily(
        family.q, basis, A, family.C_sq, family.D_sq, spec=family.spec, trunc=family.trunc
    )


def _generator_matrix(basis: Basis, k: int) -> SparseOperator:
    rows, cols, data = [], [], []
    for source, edge in enumerate(basis.forward[k]):
        if edge is None or edge[0] == OUTSIDE:
            continue
        target, weight = edge
        if weight != 0:
            rows.append(target)
            cols.append(source)
            data.append(weight)
    size = basis.size
    matrix = sparse.coo_matrix((np.asarray(data, dtype=complex), (rows, cols)), shape=(size, size))
    return SparseOperator(matrix, basis)


def _closed_form_diagonals(basis: Basis) -> Tuple[List[SparseOperator], List[SparseOperator]]:
    C_sq, D_sq = [], []
    for k in range(basis.n):
        C_sq.append(SparseOperator.diagonal([_weight_sq(e) for e in basis.forward[k]], basis))
        D_sq.append(SparseOperator.diagonal([_weight_sq(e) for e in basis.backward[k]], basis))
    return C_sq, D_sq


def _weight_sq(edge) -> float:
    return 0.0 if edge is None else abs(edge[1]) ** 2


def permutation_family(perm: Sequence[int], q: float) -> OperatorFamily:
    """One-generator family ``A = (1 - q)^{-1/2} P`` for the permutation ``e_i -> e_perm[i]``."""
    weight = complex((1.0 - q) ** -0.5)
    inverse = [0] * len(perm)
    for i, target in enumerate(perm):
        inverse[target] = i
    labels = [("u", i) for i in range(len(perm))]
    basis = Basis(
        labels,
        [[(target, weight) for target in perm]],
        [[(source, weight) for source in inverse]],
    )
    return OperatorFamily(q, basis, [_generator_matrix(basis, 0)])
