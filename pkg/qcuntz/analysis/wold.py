"""Block decomposition of a single operator satisfying ``A*A = 1 + q A A*``.

The space splits into Fock blocks generated from the vacua in ``ker A*``, a
block where ``A*A = 1/(1 - q)`` (the isometric part is unitary there), and
blocks on which ``A*A`` runs through orbits of ``t -> 1 + q t`` above
``1/(1 - q)``. On a finite truncation the decomposition is computed from the
caller-flagged interior vectors; what no block absorbs is returned as
``boundary``.
"""

import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import null_space

from qcuntz import setting
from qcuntz.classify.orbits import default_x0, normalize_x, same_orbit
from qcuntz.exceptions import RejectInputError, UnclassifiedRemainderError
from qcuntz.rep.operator import SparseOperator
from qcuntz.schemas.report import FockBlock, UnboundedBlock, UnitaryBlock, WoldDecomposition

logger = logging.getLogger(__name__)


class QWold:
    """One decomposition run; the intermediate spans are kept for inspection."""

    _A: np.ndarray
    _q: float
    _tol: float
    _interior: List[int]
    _x0: float

    def __init__(
        self,
        A: Union[SparseOperator, np.ndarray],
        q: float,
        tol: Optional[float] = None,
        interior: Optional[Sequence[int]] = None,
        x0: Optional[float] = None,
    ) -> None:
        self._A = A.to_dense() if isinstance(A, SparseOperator) else np.asarray(A, dtype=complex)
        self._q = q
        self._tol = setting.WOLD_TOL if tol is None else tol
        size = self._A.shape[0]
        self._interior = sorted(set(range(size) if interior is None else interior))
        self._x0 = default_x0(q) if x0 is None and q > 0 else x0
        self._chains: List[np.ndarray] = []
        self._unitary: Optional[np.ndarray] = None
        self._orbits: List[Dict] = []

    @property
    def size(self) -> int:
        return self._A.shape[0]

    @property
    def chains(self) -> List[np.ndarray]:
        return self._chains

    @property
    def unitary_span(self) -> Optional[np.ndarray]:
        return self._unitary

    def relation_residual(self) -> float:
        A, I = self._A, self._interior
        if not I:
            return float("inf")
        R = A.conj().T @ A - np.eye(self.size) - self._q * (A @ A.conj().T)
        scale = np.maximum(1.0, np.linalg.norm(A[:, I], axis=0) ** 2)
        return float(np.max(np.linalg.norm(R[:, I], axis=0) / scale))

    def run(self) -> WoldDecomposition:
        residual = self.relation_residual()
        if residual > self._tol:
            raise RejectInputError(
                f"Relation residual {residual:.3g} exceeds tolerance {self._tol:.3g}", residual
            )
        self._build_chains()
        self._split_complement()
        return self._assemble()

    def _build_chains(self) -> None:
        A, I, tol = self._A, self._interior, self._tol
        kernel = null_space(A.conj().T[:, I], rcond=tol)
        vacua = np.zeros((self.size, kernel.shape[1]), dtype=complex)
        vacua[I, :] = kernel

        accumulated = np.zeros((self.size, 0), dtype=complex)
        for column in range(vacua.shape[1]):
            vector = _orthogonalize(vacua[:, column], accumulated)
            if np.linalg.norm(vector) < tol:
                continue
            chain = []
            while np.linalg.norm(vector) >= tol and len(chain) < self.size:
                vector = vector / np.linalg.norm(vector)
                chain.append(vector)
                accumulated = np.column_stack([accumulated, vector])
                vector = _orthogonalize(A @ vector, accumulated)
            self._chains.append(np.column_stack(chain))
        logger.debug("Found %d Fock chains", len(self._chains))

    def _split_complement(self) -> None:
        A, q, tol = self._A, self._q, self._tol
        F = np.column_stack(self._chains) if self._chains else np.zeros((self.size, 0))
        Q = null_space(F.conj().T) if F.shape[1] else np.eye(self.size, dtype=complex)
        if Q.shape[1] == 0:
            return
        w, V = np.linalg.eigh(Q.conj().T @ (A.conj().T @ A) @ Q)
        Y = Q @ V

        outside = np.ones(self.size, dtype=bool)
        outside[self._interior] = False
        c = 1.0 / (1.0 - q)
        unitary, candidates, unclassified = [], [], []
        for value, vector in self._interior_eigenvectors(w, Y, outside):
            if abs(value - c) <= tol * (1.0 + c):
                unitary.append(vector)
            elif value > c and q > 0:
                candidates.append((float(value), vector))
            else:
                unclassified.append(float(value))
        if unclassified:
            raise UnclassifiedRemainderError(unclassified)
        if unitary:
            self._unitary = np.column_stack(unitary)
        self._orbits = self._group_orbits(candidates)

    def _interior_eigenvectors(
        self, w: np.ndarray, Y: np.ndarray, outside: np.ndarray
    ) -> Iterator[Tuple[float, np.ndarray]]:
        # a degenerate cluster may mix interior and outside labels; keep the
        # combinations that vanish on the outside rows
        limit = np.sqrt(self._tol)
        start = 0
        while start < len(w):
            stop = start + 1
            while stop < len(w) and w[stop] - w[stop - 1] <= self._tol * (1.0 + abs(w[stop])):
                stop += 1
            block = Y[:, start:stop]
            if outside.any():
                _, s, vh = np.linalg.svd(block[outside, :])
                weights = np.zeros(block.shape[1])
                weights[: len(s)] = s**2
                block = block @ vh.conj().T[:, weights <= limit]
            value = float(np.mean(w[start:stop]))
            for vector in block.T:
                yield value, vector
            start = stop

    def _group_orbits(self, candidates) -> List[Dict]:
        q, tol = self._q, self._tol
        groups: List[Dict] = []
        for value, vector in sorted(candidates, key=lambda item: item[0]):
            for group in groups:
                if any(same_orbit(value, other, q, tol) for other in group["values"]):
                    group["values"].append(value)
                    group["vectors"].append(vector)
                    break
            else:
                groups.append({"values": [value], "vectors": [vector]})
        for group in groups:
            group["span"] = np.column_stack(group["vectors"])
        return groups

    def _assemble(self) -> WoldDecomposition:
        spans = list(self._chains)
        if self._unitary is not None:
            spans.append(self._unitary)
        spans.extend(group["span"] for group in self._orbits)
        owner = self._assign(spans)

        def members(index: int) -> List[int]:
            return [ordinal for ordinal, block in enumerate(owner) if block == index]

        fock_blocks = []
        for index, chain in enumerate(self._chains):
            vacuum = chain[:, 0]
            coords = [
                [int(i), float(vacuum[i].real), float(vacuum[i].imag)]
                for i in np.flatnonzero(np.abs(vacuum) > self._tol)
            ]
            fock_blocks.append(
                FockBlock(vacuum=coords, labels=members(index), chain_length=chain.shape[1])
            )

        offset = len(self._chains)
        unitary_block = UnitaryBlock()
        if self._unitary is not None:
            unitary_block = UnitaryBlock(
                present=True, labels=members(offset), dimension=self._unitary.shape[1]
            )
            offset += 1

        unbounded_blocks = []
        for index, group in enumerate(self._orbits):
            values = sorted(group["values"])
            anchor = min(values, key=lambda v: abs(v - self._x0))
            normalized = normalize_x(anchor, self._q, self._x0)
            unbounded_blocks.append(
                UnboundedBlock(
                    labels=members(offset + index),
                    x=normalized.x,
                    shift=normalized.shift,
                    eigenvalues=values,
                )
            )

        boundary = [ordinal for ordinal, block in enumerate(owner) if block is None]
        decomposition = WoldDecomposition(
            q=self._q,
            dimension=self.size,
            fock_blocks=fock_blocks,
            unitary_block=unitary_block,
            unbounded_blocks=unbounded_blocks,
            boundary=boundary,
            residual=self._leak(owner, len(spans)),
        )
        logger.debug(
            "q_wold: %d Fock, unitary %d, %d unbounded, %d boundary",
            len(fock_blocks),
            unitary_block.dimension,
            len(unbounded_blocks),
            len(boundary),
        )
        return decomposition

    def _assign(self, spans: List[np.ndarray]) -> List[Optional[int]]:
        owner: List[Optional[int]] = [None] * self.size
        for ordinal in range(self.size):
            weights = [float(np.sum(np.abs(span[ordinal, :]) ** 2)) for span in spans]
            if weights and max(weights) >= 0.5:
                owner[ordinal] = int(np.argmax(weights))

        # boundary vectors join the block they are linked to through A
        linked = np.abs(self._A) > 0
        linked = linked | linked.T
        changed = True
        while changed:
            changed = False
            for ordinal in range(self.size):
                if owner[ordinal] is not None:
                    continue
                for neighbour in np.flatnonzero(linked[ordinal]):
                    if owner[neighbour] is not None:
                        owner[ordinal] = owner[neighbour]
                        changed = True
                        break
        return owner

    def _leak(self, owner: List[Optional[int]], blocks: int) -> float:
        leak = 0.0
        for block in range(blocks):
            inside = np.array([b == block for b in owner])
            if inside.any():
                leak = max(leak, float(np.linalg.norm(self._A[np.ix_(~inside, inside)])))
        return leak


def q_wold(
    A: Union[SparseOperator, np.ndarray],
    q: float,
    tol: Optional[float] = None,
    interior: Optional[Sequence[int]] = None,
    x0: Optional[float] = None,
) -> WoldDecomposition:
    return QWold(A, q, tol, interior, x0).run()


def _orthogonalize(vector: np.ndarray, basis: np.ndarray) -> np.ndarray:
    for _ in range(2):
        if basis.shape[1]:
            vector = vector - basis @ (basis.conj().T @ vector)
    return vector
