from typing import Any, Dict, Iterable, Optional, Sequence, Union

import numpy as np
from scipy import sparse

from qcuntz.exceptions import StructureError
from qcuntz.rep.basis import Basis


class SparseOperator:
    """Complex CSR matrix bound to the basis it acts on."""

    _matrix: sparse.csr_matrix
    _basis: Optional[Basis]

    def __init__(self, matrix: Any, basis: Optional[Basis] = None) -> None:
        matrix = sparse.csr_matrix(matrix, dtype=complex)
        matrix.eliminate_zeros()
        self._matrix = matrix
        self._basis = basis

    @property
    def matrix(self) -> sparse.csr_matrix:
        return self._matrix

    @property
    def basis(self) -> Optional[Basis]:
        return self._basis

    @property
    def size(self) -> int:
        return self._matrix.shape[0]

    @property
    def nnz(self) -> int:
        return self._matrix.nnz

    @classmethod
    def identity(cls, size: int, basis: Optional[Basis] = None) -> "SparseOperator":
        return cls(sparse.identity(size, dtype=complex, format="csr"), basis)

    @classmethod
    def zeros(cls, size: int, basis: Optional[Basis] = None) -> "SparseOperator":
        return cls(sparse.csr_matrix((size, size), dtype=complex), basis)

    @classmethod
    def diagonal(cls, values: Iterable[complex], basis: Optional[Basis] = None) -> "SparseOperator":
        values = np.asarray(list(values), dtype=complex)
        return cls(sparse.diags(values, format="csr"), basis)

    def adjoint(self) -> "SparseOperator":
        return SparseOperator(self._matrix.conj().T, self._basis)

    def to_dense(self) -> np.ndarray:
        return self._matrix.toarray()

    def diagonal_values(self) -> np.ndarray:
        return self._matrix.diagonal()

    def is_diagonal(self) -> bool:
        coo = self._matrix.tocoo()
        return bool(np.all(coo.row == coo.col))

    def is_weighted_shift(self) -> bool:
        counts = np.diff(self._matrix.tocsc().indptr)
        return bool(np.all(counts <= 1))

    def column_norms(self, columns: Sequence[int]) -> np.ndarray:
        columns = list(columns)
        if not columns:
            return np.zeros(0)
        block = self._matrix.tocsc()[:, columns]
        return np.sqrt(np.asarray(abs(block).power(2).sum(axis=0)).ravel())

    def permuted(self, perm: Sequence[int], basis: Optional[Basis] = None) -> "SparseOperator":
        perm = np.asarray(perm)
        return SparseOperator(self._matrix[perm][:, perm], basis)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self._matrix @ other.matrix, self._basis)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self._matrix + other.matrix, self._basis)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(self._matrix - other.matrix, self._basis)

    def __mul__(self, scalar: Union[int, float, complex]) -> "SparseOperator":
        return SparseOperator(self._matrix * scalar, self._basis)

    __rmul__ = __mul__

    def to_json(self) -> Dict[str, Any]:
        coo = self._matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return {
            "rows": int(coo.shape[0]),
            "cols": int(coo.shape[1]),
            "entries": [
                [int(coo.row[i]), int(coo.col[i]), float(coo.data[i].real), float(coo.data[i].imag)]
                for i in order
            ],
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any], basis: Optional[Basis] = None) -> "SparseOperator":
        try:
            rows, cols = int(data["rows"]), int(data["cols"])
            entries = data["entries"]
        except (KeyError, TypeError, ValueError):
            raise StructureError("Matrix payload needs rows, cols and entries")
        if rows != cols:
            raise StructureError(f"Operators must be square, got {rows}x{cols}")
        if not entries:
            return cls.zeros(rows, basis)
        i, j, re, im = (np.asarray(column) for column in zip(*entries))
        matrix = sparse.coo_matrix(
            (re.astype(float) + 1j * im.astype(float), (i.astype(int), j.astype(int))),
            shape=(rows, cols),
        )
        return cls(matrix, basis)

    def __repr__(self) -> str:
        return f"SparseOperator(size={self.size}, nnz={self.nnz})"


def polar_isometry(A: SparseOperator) -> SparseOperator:
    """Isometric part of a weighted shift: every nonzero weight becomes its phase."""
    if not A.is_weighted_shift():
        raise StructureError("Polar part requested for an operator that is not a weighted shift")
    matrix = A.matrix.copy()
    matrix.data = matrix.data / np.abs(matrix.data)
    return SparseOperator(matrix, A.basis)
