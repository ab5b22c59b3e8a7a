"""Multi-indices over the alphabet {1..n}.

A word labels the basis vectors of the n-generator representations. The
transformations ``sigma`` (drop the first letter) and ``sigma_k`` (prepend
``k``) move between words the way the isometries ``S_k`` and ``S_k*`` move
between basis vectors.
"""

import re
from typing import Iterator, List, Optional, Sequence, Tuple

from qcuntz.exceptions import InvalidLetterError

RE_WORD = re.compile(r"^\[\s*(\d+(\s*,\s*\d+)*)?\s*\]$")


class Word:
    __slots__ = ("_letters",)

    _letters: Tuple[int, ...]

    def __init__(self, letters: Sequence[int] = ()) -> None:
        self._letters = tuple(int(letter) for letter in letters)
        if any(letter < 1 for letter in self._letters):
            raise InvalidLetterError(f"Letters must be positive: {self._letters}")

    @property
    def letters(self) -> Tuple[int, ...]:
        return self._letters

    @property
    def first(self) -> Optional[int]:
        return self._letters[0] if self._letters else None

    @property
    def last(self) -> Optional[int]:
        return self._letters[-1] if self._letters else None

    @property
    def is_empty(self) -> bool:
        return not self._letters

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Length first, then lexicographic on the reversed word."""
        return len(self._letters), self._letters[::-1]

    @classmethod
    def parse(cls, text: str) -> "Word":
        match = RE_WORD.match(text.strip())
        if not match:
            raise InvalidLetterError(f"Malformed word: {text!r}")
        body = match.group(1)
        if not body:
            return EMPTY
        return cls(int(part) for part in body.split(","))

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self._letters)

    def __getitem__(self, index: int) -> int:
        return self._letters[index]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self._letters == other._letters

    def __hash__(self) -> int:
        return hash(("Word", self._letters))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return "[" + ",".join(str(letter) for letter in self._letters) + "]"

    def __repr__(self) -> str:
        return f"Word({str(self)})"


EMPTY = Word()


def check_letter(k: int, n: Optional[int] = None) -> int:
    if k < 1 or (n is not None and k > n):
        bound = f"1..{n}" if n is not None else "a positive integer"
        raise InvalidLetterError(f"Letter {k} out of range, expected {bound}")
    return k


def sigma(w: Word) -> Word:
    # totalized: sigma of the empty word is the empty word
    if w.is_empty:
        return EMPTY
    return Word(w.letters[1:])


def sigma_k(k: int, w: Word, n: Optional[int] = None) -> Word:
    check_letter(k, n)
    return Word((k,) + w.letters)


def m_k(k: int, w: Word) -> int:
    """Length of the maximal leading run of ``k`` in ``w``."""
    run = 0
    for letter in w:
        if letter != k:
            break
        run += 1
    return run


def is_in_lambda_j(w: Word, j: int) -> bool:
    return w.is_empty or w.last != j


def enumerate_lambda(n: int, L: int) -> List[Word]:
    return _enumerate(n, L, j=None)


def enumerate_lambda_j(n: int, j: int, L: int) -> List[Word]:
    check_letter(j, n)
    return _enumerate(n, L, j=j)


def _enumerate(n: int, L: int, j: Optional[int]) -> List[Word]:
    if n < 1:
        raise InvalidLetterError(f"Alphabet size must be >= 1, got {n}")
    words = [EMPTY]
    layer = [EMPTY]
    for _ in range(L):
        # prepending keeps the last letter, so membership in Lambda_j is
        # decided when a word first becomes nonempty
        next_layer = []
        for w in layer:
            for k in range(1, n + 1):
                if w.is_empty and k == j:
                    continue
                next_layer.append(sigma_k(k, w))
        words.extend(next_layer)
        layer = next_layer
    return words
