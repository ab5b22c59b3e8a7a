"""Spectral resolutions of the diagonal number operators."""

import logging
import math
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from qcuntz import setting
from qcuntz.rep.basis import Basis
from qcuntz.rep.operator import SparseOperator

logger = logging.getLogger(__name__)


class Interval:
    __slots__ = ("_lo", "_hi")

    def __init__(self, lo: float, hi: float) -> None:
        if lo > hi:
            lo, hi = hi, lo
        self._lo = float(lo)
        self._hi = float(hi)

    @property
    def lo(self) -> float:
        return self._lo

    @property
    def hi(self) -> float:
        return self._hi

    @classmethod
    def point(cls, value: float) -> "Interval":
        return cls(value, value)

    @classmethod
    def everything(cls) -> "Interval":
        return cls(-math.inf, math.inf)

    def contains(self, value: float, atol: float = 0.0) -> bool:
        return self._lo - atol <= value <= self._hi + atol

    def preimage(self, q: float) -> "Interval":
        """Preimage under t -> 1 + q t, defined for q > 0."""
        return Interval((self._lo - 1.0) / q, (self._hi - 1.0) / q)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Interval) and (self._lo, self._hi) == (other._lo, other._hi)

    def __repr__(self) -> str:
        return f"[{self._lo!r}, {self._hi!r}]"


class IntervalSet:
    _intervals: Tuple[Interval, ...]

    def __init__(self, intervals: Iterable[Union[Interval, Tuple[float, float]]] = ()) -> None:
        self._intervals = tuple(
            item if isinstance(item, Interval) else Interval(*item) for item in intervals
        )

    @property
    def intervals(self) -> Tuple[Interval, ...]:
        return self._intervals

    @classmethod
    def everything(cls) -> "IntervalSet":
        return cls([Interval.everything()])

    @classmethod
    def point(cls, value: float) -> "IntervalSet":
        return cls([Interval.point(value)])

    def contains(self, value: float, atol: float = 0.0) -> bool:
        return any(interval.contains(value, atol) for interval in self._intervals)

    def preimage(self, q: float) -> "IntervalSet":
        return IntervalSet(interval.preimage(q) for interval in self._intervals)

    def __repr__(self) -> str:
        return " u ".join(repr(interval) for interval in self._intervals) or "{}"


class SpectralResolution:
    _eigenvalues: List[float]
    _subsets: List[Tuple[int, ...]]
    _values: np.ndarray
    _basis: Basis

    def __init__(
        self,
        eigenvalues: Sequence[float],
        subsets: Sequence[Sequence[int]],
        values: np.ndarray,
        basis: Basis = None,
    ) -> None:
        self._eigenvalues = [float(value) for value in eigenvalues]
        self._subsets = [tuple(subset) for subset in subsets]
        self._values = values
        self._basis = basis

    @property
    def eigenvalues(self) -> List[float]:
        return self._eigenvalues

    @property
    def subsets(self) -> List[Tuple[int, ...]]:
        return self._subsets

    @property
    def size(self) -> int:
        return len(self._values)

    def items(self) -> List[Tuple[float, Tuple[int, ...]]]:
        return list(zip(self._eigenvalues, self._subsets))

    def apply_E(self, delta: IntervalSet, atol: float = 0.0) -> SparseOperator:
        diagonal = np.zeros(self.size)
        for value, subset in zip(self._eigenvalues, self._subsets):
            if delta.contains(value, atol):
                diagonal[list(subset)] = 1.0
        return SparseOperator.diagonal(diagonal, self._basis)

    def __repr__(self) -> str:
        return f"SpectralResolution(eigenvalues={self._eigenvalues})"


def spectral_resolution(
    D_sq: Union[SparseOperator, np.ndarray],
    tol: float = None,
    basis: Basis = None,
) -> SpectralResolution:
    if isinstance(D_sq, SparseOperator):
        if not D_sq.is_diagonal():
            raise ValueError("spectral_resolution expects a diagonal operator")
        basis = basis or D_sq.basis
        values = D_sq.diagonal_values().real
    else:
        values = np.asarray(D_sq, dtype=float)
    tol = setting.DEDUP_TOL if tol is None else tol

    order = np.argsort(values, kind="stable")
    clusters: List[List[int]] = []
    start = None
    for ordinal in order:
        value = values[ordinal]
        if clusters and value - start <= tol:
            clusters[-1].append(int(ordinal))
        else:
            clusters.append([int(ordinal)])
            start = value

    eigenvalues = [float(np.mean(values[cluster])) for cluster in clusters]
    subsets = [sorted(cluster) for cluster in clusters]
    logger.debug("Resolved %d values into %d eigenvalues", len(values), len(eigenvalues))
    return SpectralResolution(eigenvalues, subsets, values, basis)


def apply_E(
    resolution: SpectralResolution, delta: IntervalSet, atol: float = 0.0
) -> SparseOperator:
    return resolution.apply_E(delta, atol)
