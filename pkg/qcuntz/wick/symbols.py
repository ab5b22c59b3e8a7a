from typing import List, NamedTuple, Sequence, Tuple

from qcuntz.wick.qpoly import QPoly


class GenSymbol(NamedTuple):
    index: int
    starred: bool = False

    def __str__(self) -> str:
        return f"a{self.index}*" if self.starred else f"a{self.index}"


SymbolWord = Tuple[GenSymbol, ...]


class Term(NamedTuple):
    """``coeff`` times the product of ``symbols`` in the written order."""

    coeff: QPoly
    symbols: SymbolWord

    def __str__(self) -> str:
        word = format_word(self.symbols)
        if not self.symbols:
            return str(self.coeff)
        if self.coeff == 1:
            return word
        if self.coeff == -1:
            return f"-{word}"
        coeff = str(self.coeff)
        if not self.coeff.is_single_term:
            coeff = f"({coeff})"
        return f"{coeff} {word}"


RawExpr = List[Term]


def format_word(symbols: Sequence[GenSymbol]) -> str:
    return " ".join(str(symbol) for symbol in symbols)


def raw_word(symbols: Sequence[GenSymbol]) -> RawExpr:
    return [Term(QPoly.one(), tuple(symbols))]
