"""Wick ordering by rewriting ``a_i* a_j``.

Every adjacent pair ``a_i* a_j`` is replaced by ``0`` when ``i != j`` and by
``1 + q a_i a_i*`` when ``i == j`` until all creators stand to the left of all
annihilators. Each step removes one star-before-creator inversion, so the
rewriting terminates for either redex strategy.
"""

import logging
from typing import Dict, Iterator, List, Literal, NamedTuple, Optional, Sequence, Tuple, Union

from qcuntz.wick.qpoly import QPoly
from qcuntz.wick.symbols import GenSymbol, RawExpr, SymbolWord, Term, raw_word
from qcuntz.words import Word

logger = logging.getLogger(__name__)

Strategy = Literal["leftmost", "rightmost"]


class NormalMonomial(NamedTuple):
    """``coeff * a_creators (a_annihilators)*`` with ``u_alpha = u_a1 ... u_ak``."""

    creators: Word
    annihilators: Word
    coeff: QPoly

    @property
    def symbols(self) -> SymbolWord:
        """Operator-order symbols; the adjoint reverses the annihilator word."""
        return tuple(GenSymbol(k) for k in self.creators) + tuple(
            GenSymbol(k, True) for k in reversed(self.annihilators.letters)
        )

    def __str__(self) -> str:
        return str(Term(self.coeff, self.symbols))


class WickExpr:
    _terms: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], QPoly]

    def __init__(self) -> None:
        self._terms = {}

    def add(self, creators: Word, annihilators: Word, coeff: QPoly) -> None:
        key = (creators.letters, annihilators.letters)
        total = self._terms.get(key, QPoly.zero()) + coeff
        if total.is_zero:
            self._terms.pop(key, None)
        else:
            self._terms[key] = total

    @property
    def monomials(self) -> List[NormalMonomial]:
        return [
            NormalMonomial(Word(creators), Word(annihilators), coeff)
            for (creators, annihilators), coeff in sorted(self._terms.items(), key=lambda kv: kv[0])
        ]

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, creators: Sequence[int] = (), annihilators: Sequence[int] = ()) -> QPoly:
        return self._terms.get((tuple(creators), tuple(annihilators)), QPoly.zero())

    def __iter__(self) -> Iterator[NormalMonomial]:
        return iter(self.monomials)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WickExpr) and self._terms == other._terms

    def __str__(self) -> str:
        out = ""
        for monomial in self.monomials:
            text = str(monomial)
            if not out:
                out = text
            elif text.startswith("-"):
                out += " - " + text[1:]
            else:
                out += " + " + text
        return out or "0"

    def __repr__(self) -> str:
        return f"WickExpr({self})"

    def to_json(self) -> List[Dict[str, object]]:
        return [
            {
                "creators": str(m.creators),
                "annihilators": str(m.annihilators),
                "coeff": {str(e): v for e, v in m.coeff.items()},
            }
            for m in self.monomials
        ]


def find_redex(word: SymbolWord, strategy: Strategy = "leftmost") -> Optional[int]:
    """Position ``i`` of an adjacent pair ``a_x* a_y``, or None if ``word`` is normal."""
    positions = range(len(word) - 1)
    if strategy == "rightmost":
        positions = reversed(positions)
    for i in positions:
        if word[i].starred and not word[i + 1].starred:
            return i
    return None


def rewrite_step(word: SymbolWord, i: int) -> List[Tuple[QPoly, SymbolWord]]:
    left, right = word[i], word[i + 1]
    if left.index != right.index:
        return []
    head, tail = word[:i], word[i + 2 :]
    swapped = (GenSymbol(left.index), GenSymbol(left.index, True))
    return [(QPoly.one(), head + tail), (QPoly.monomial(1), head + swapped + tail)]


def normal_form(
    expr: Union[RawExpr, Sequence[GenSymbol]],
    strategy: Strategy = "leftmost",
) -> WickExpr:
    if isinstance(expr, tuple) or (expr and isinstance(expr[0], GenSymbol)):
        expr = raw_word(expr)

    pending: Dict[SymbolWord, QPoly] = {}
    for term in expr:
        _accumulate(pending, tuple(term.symbols), term.coeff)

    result = WickExpr()
    steps = 0
    while pending:
        word, coeff = pending.popitem()
        i = find_redex(word, strategy)
        if i is None:
            creators, annihilators = _split(word)
            result.add(creators, annihilators, coeff)
            continue
        steps += 1
        for factor, rewritten in rewrite_step(word, i):
            _accumulate(pending, rewritten, factor * coeff)

    logger.debug("Normal form reached after %d rewrites (%s)", steps, strategy)
    return result


def _accumulate(pending: Dict[SymbolWord, QPoly], word: SymbolWord, coeff: QPoly) -> None:
    total = pending.get(word, QPoly.zero()) + coeff
    if total.is_zero:
        pending.pop(word, None)
    else:
        pending[word] = total


def _split(word: SymbolWord) -> Tuple[Word, Word]:
    creators = [symbol.index for symbol in word if not symbol.starred]
    stars = [symbol.index for symbol in word if symbol.starred]
    return Word(creators), Word(reversed(stars))


