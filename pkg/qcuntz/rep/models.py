"""Untruncated weighted-shift realisations of every representation family.

A model answers two questions for a basis label and a generator ``k``: where
``A_k`` sends the label (``forward``) and which label ``A_k`` sends onto it
(``backward``), each with the complex weight of that edge. Truncation is
applied afterwards by the basis, so the model never needs a window.
"""

import cmath
import math
from abc import ABC, abstractmethod
from typing import List, NamedTuple, Optional, Tuple

from qcuntz.schemas.spec import (
    BoundedPhiJ,
    Circle,
    FockQ1,
    FockQn,
    LineZ,
    RepSpec,
    TruncationParams,
    UnboundedXJ,
)
from qcuntz.words import EMPTY, Word, enumerate_lambda, enumerate_lambda_j, m_k, sigma, sigma_k


class Label(NamedTuple):
    word: Optional[Word] = None
    level: Optional[int] = None

    @property
    def kind(self) -> str:
        if self.word is None:
            return "level" if self.level is not None else "point"
        return "word_level" if self.level is not None else "word"

    def __str__(self) -> str:
        if self.word is None and self.level is None:
            return "*"
        word = str(self.word) if self.word is not None else ""
        level = f"@{self.level}" if self.level is not None else ""
        return word + level


Step = Optional[Tuple[Label, complex]]


def fock_value(m: int, q: float) -> float:
    """(1 - q^m) / (1 - q); ``0.0 ** 0 == 1`` keeps the q = 0 case exact."""
    return (1.0 - q**m) / (1.0 - q)


def level_value(s: int, q: float, x: float) -> float:
    qs = q**s
    return (1.0 - qs) / (1.0 - q) + qs * x


class ShiftModel(ABC):
    _spec: RepSpec

    def __init__(self, spec: RepSpec) -> None:
        self._spec = spec

    @property
    def spec(self) -> RepSpec:
        return self._spec

    @property
    def q(self) -> float:
        return self._spec.q

    @property
    def n(self) -> int:
        return self._spec.n

    @abstractmethod
    def labels(self, trunc: TruncationParams) -> List[Label]: ...

    @abstractmethod
    def forward(self, k: int, label: Label) -> Step: ...

    @abstractmethod
    def backward(self, k: int, label: Label) -> Step: ...


class FockQ1Model(ShiftModel):
    def labels(self, trunc: TruncationParams) -> List[Label]:
        return [Label(level=m) for m in range(0, trunc.s_max + 1)]

    def forward(self, k: int, label: Label) -> Step:
        m = label.level
        return Label(level=m + 1), math.sqrt(fock_value(m + 1, self.q))

    def backward(self, k: int, label: Label) -> Step:
        m = label.level
        if m == 0:
            return None
        return Label(level=m - 1), math.sqrt(fock_value(m, self.q))


class CircleModel(ShiftModel):
    @property
    def weight(self) -> complex:
        return cmath.exp(1j * self.spec.phi) / math.sqrt(1.0 - self.q)

    def labels(self, trunc: TruncationParams) -> List[Label]:
        return [Label()]

    def forward(self, k: int, label: Label) -> Step:
        return label, self.weight

    def backward(self, k: int, label: Label) -> Step:
        return label, self.weight


class LineZModel(ShiftModel):
    def labels(self, trunc: TruncationParams) -> List[Label]:
        return [Label(level=s) for s in range(trunc.s_min, trunc.s_max + 1)]

    def forward(self, k: int, label: Label) -> Step:
        s = label.level
        return Label(level=s + 1), math.sqrt(level_value(s, self.q, self.spec.x))

    def backward(self, k: int, label: Label) -> Step:
        s = label.level
        return Label(level=s - 1), math.sqrt(level_value(s - 1, self.q, self.spec.x))


class WordModel(ShiftModel):
    """Shared word combinatorics of the n-generator families.

    Away from the empty word every family acts by
    ``A_k e_a = sqrt((1 - q^{m_k(k a)})/(1 - q)) e_{k a}``; subclasses only
    decide what the distinguished generator ``j`` does on the empty word.
    """

    @property
    def j(self) -> Optional[int]:
        return None

    def forward(self, k: int, label: Label) -> Step:
        if k == self.j and label.word.is_empty:
            return self.vacuum_forward(label)
        target = sigma_k(k, label.word)
        weight = math.sqrt(fock_value(m_k(k, target), self.q))
        return Label(target, label.level), weight

    def backward(self, k: int, label: Label) -> Step:
        word = label.word
        if word.is_empty:
            return self.vacuum_backward(label) if k == self.j else None
        if word.first != k:
            return None
        weight = math.sqrt(fock_value(m_k(k, word), self.q))
        return Label(sigma(word), label.level), weight

    def vacuum_forward(self, label: Label) -> Step:
        raise NotImplementedError

    def vacuum_backward(self, label: Label) -> Step:
        raise NotImplementedError


class FockQnModel(WordModel):
    def labels(self, trunc: TruncationParams) -> List[Label]:
        return [Label(word) for word in enumerate_lambda(self.n, trunc.L)]


class UnboundedModel(WordModel):
    @property
    def j(self) -> int:
        return self.spec.j

    def labels(self, trunc: TruncationParams) -> List[Label]:
        words = enumerate_lambda_j(self.n, self.j, trunc.L)
        return [
            Label(word, s) for s in range(trunc.s_min, trunc.s_max + 1) for word in words
        ]

    def vacuum_forward(self, label: Label) -> Step:
        s = label.level
        return Label(EMPTY, s + 1), math.sqrt(level_value(s, self.q, self.spec.x))

    def vacuum_backward(self, label: Label) -> Step:
        s = label.level
        return Label(EMPTY, s - 1), math.sqrt(level_value(s - 1, self.q, self.spec.x))


class BoundedModel(WordModel):
    @property
    def j(self) -> int:
        return self.spec.j

    @property
    def weight(self) -> complex:
        return cmath.exp(2j * math.pi * self.spec.phi) / math.sqrt(1.0 - self.q)

    def labels(self, trunc: TruncationParams) -> List[Label]:
        return [Label(word) for word in enumerate_lambda_j(self.n, self.j, trunc.L)]

    def vacuum_forward(self, label: Label) -> Step:
        return label, self.weight

    def vacuum_backward(self, label: Label) -> Step:
        return label, self.weight


MODELS = {
    FockQ1: FockQ1Model,
    Circle: CircleModel,
    LineZ: LineZModel,
    FockQn: FockQnModel,
    UnboundedXJ: UnboundedModel,
    BoundedPhiJ: BoundedModel,
}


def model_for(spec: RepSpec) -> ShiftModel:
    return MODELS[type(spec)](spec)
