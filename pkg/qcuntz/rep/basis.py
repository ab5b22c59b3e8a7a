import logging
import threading
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from qcuntz.exceptions import InvalidTruncationError
from qcuntz.rep.models import model_for
from qcuntz.schemas.spec import RepSpec, TruncationParams

logger = logging.getLogger(__name__)

OUTSIDE = -1

# (target ordinal or OUTSIDE, weight), or None when the untruncated
# operator sends the vector to zero
Edge = Optional[Tuple[int, complex]]


class Basis:
    """Ordered truncation basis together with its shift edges.

    ``forward[k][v]`` is the image of basis vector ``v`` under generator
    ``k`` (0-based) and ``backward[k][v]`` the vector that generator ``k``
    sends onto ``v``, both taken in the untruncated representation.
    Interior sets are derived from these edges for any depth and cached
    under a lock, so one basis can be shared by worker threads.
    """

    _labels: List[Hashable]
    _ordinal: Dict[Hashable, int]
    _forward: List[List[Edge]]
    _backward: List[List[Edge]]
    _interior: Dict[Tuple[int, Tuple[int, ...]], FrozenSet[int]]
    _adjoint_closed: Dict[Tuple[int, Tuple[int, ...]], FrozenSet[int]]

    def __init__(
        self,
        labels: Sequence[Hashable],
        forward: Sequence[Sequence[Edge]],
        backward: Sequence[Sequence[Edge]],
    ) -> None:
        self._labels = list(labels)
        self._ordinal = {label: index for index, label in enumerate(self._labels)}
        if len(self._ordinal) != len(self._labels):
            raise InvalidTruncationError("Basis labels must be distinct")
        self._forward = [list(edges) for edges in forward]
        self._backward = [list(edges) for edges in backward]
        self._interior = {}
        self._adjoint_closed = {}
        self._lock = threading.RLock()

    @property
    def labels(self) -> List[Hashable]:
        return self._labels

    @property
    def size(self) -> int:
        return len(self._labels)

    @property
    def n(self) -> int:
        return len(self._forward)

    @property
    def forward(self) -> List[List[Edge]]:
        return self._forward

    @property
    def backward(self) -> List[List[Edge]]:
        return self._backward

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label: Hashable) -> bool:
        return label in self._ordinal

    def ordinal(self, label: Hashable) -> int:
        return self._ordinal[label]

    def label(self, ordinal: int) -> Hashable:
        return self._labels[ordinal]

    @classmethod
    def build(cls, spec: RepSpec, trunc: TruncationParams) -> "Basis":
        model = model_for(spec)
        labels = model.labels(trunc)
        if not labels:
            raise InvalidTruncationError(
                f"Truncation {trunc.model_dump()} leaves no basis vectors for {spec.family}"
            )
        ordinal = {label: index for index, label in enumerate(labels)}
        forward = [
            [_edge(model.forward(k, label), ordinal) for label in labels]
            for k in range(1, model.n + 1)
        ]
        backward = [
            [_edge(model.backward(k, label), ordinal) for label in labels]
            for k in range(1, model.n + 1)
        ]
        logger.debug("Built %s basis with %d labels", spec.family, len(labels))
        return cls(labels, forward, backward)

    def interior(self, d: int, generators: Optional[Iterable[int]] = None) -> FrozenSet[int]:
        """Ordinals closed under ``d`` applications of generators and adjoints.

        ``generators`` restricts the closure to a subset of the 0-based
        generator indices; the default is all of them.
        """
        gens = self._generator_key(generators)
        key = (d, gens)
        with self._lock:
            if key in self._interior:
                return self._interior[key]
            if d <= 0:
                result = frozenset(range(self.size))
            else:
                previous = self.interior(d - 1, gens)
                result = frozenset(
                    v
                    for v in range(self.size)
                    if all(
                        edge is None or edge[0] in previous
                        for k in gens
                        for edge in (self._forward[k][v], self._backward[k][v])
                    )
                )
            self._interior[key] = result
        return result

    def adjoint_closed(self, d: int, generators: Optional[Iterable[int]] = None) -> FrozenSet[int]:
        gens = self._generator_key(generators)
        key = (d, gens)
        with self._lock:
            if key in self._adjoint_closed:
                return self._adjoint_closed[key]
            if d <= 0:
                result = frozenset(range(self.size))
            else:
                previous = self.adjoint_closed(d - 1, gens)
                result = frozenset(
                    v
                    for v in range(self.size)
                    if all(
                        self._backward[k][v] is None or self._backward[k][v][0] in previous
                        for k in gens
                    )
                )
            self._adjoint_closed[key] = result
        return result

    def permuted(self, perm: Sequence[int]) -> "Basis":
        # new ordinal i is old ordinal perm[i]
        inverse = _inverse(perm)

        def remap(edge: Edge) -> Edge:
            if edge is None or edge[0] == OUTSIDE:
                return edge
            return inverse[edge[0]], edge[1]

        return Basis(
            [self._labels[old] for old in perm],
            [[remap(edges[old]) for old in perm] for edges in self._forward],
            [[remap(edges[old]) for old in perm] for edges in self._backward],
        )

    @classmethod
    def direct_sum(cls, bases: Sequence["Basis"]) -> "Basis":
        n = bases[0].n
        if any(basis.n != n for basis in bases):
            raise InvalidTruncationError("Direct summands must share the generator count")
        labels: List[Hashable] = []
        forward: List[List[Edge]] = [[] for _ in range(n)]
        backward: List[List[Edge]] = [[] for _ in range(n)]
        offset = 0
        for index, basis in enumerate(bases):
            labels.extend((index, label) for label in basis.labels)
            for k in range(n):
                forward[k].extend(_offset(edge, offset) for edge in basis.forward[k])
                backward[k].extend(_offset(edge, offset) for edge in basis.backward[k])
            offset += basis.size
        return cls(labels, forward, backward)

    def _generator_key(self, generators: Optional[Iterable[int]]) -> Tuple[int, ...]:
        if generators is None:
            return tuple(range(self.n))
        return tuple(sorted(set(generators)))

    def __repr__(self) -> str:
        return f"Basis(size={self.size}, n={self.n})"


def build_basis(spec: RepSpec, trunc: TruncationParams) -> Basis:
    return Basis.build(spec, trunc)


def _edge(step, ordinal: Dict[Hashable, int]) -> Edge:
    if step is None:
        return None
    label, weight = step
    return ordinal.get(label, OUTSIDE), complex(weight)


def _offset(edge: Edge, offset: int) -> Edge:
    if edge is None or edge[0] == OUTSIDE:
        return edge
    return edge[0] + offset, edge[1]


def _inverse(perm: Sequence[int]) -> List[int]:
    inverse = [0] * len(perm)
    for new, old in enumerate(perm):
        inverse[old] = new
    return inverse
