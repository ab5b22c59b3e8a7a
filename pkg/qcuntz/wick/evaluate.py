from typing import Optional, Sequence, Union

from qcuntz.exceptions import AlphabetMismatchError
from qcuntz.rep.family import OperatorFamily
from qcuntz.rep.operator import SparseOperator
from qcuntz.wick.normal_form import WickExpr
from qcuntz.wick.symbols import GenSymbol, RawExpr, SymbolWord, raw_word


def evaluate(
    expr: Union[WickExpr, RawExpr, Sequence[GenSymbol]],
    family: OperatorFamily,
    q_value: Optional[float] = None,
) -> SparseOperator:
    """Substitute ``A_k`` for ``a_k`` and ``A_k^H`` for ``a_k*`` and multiply out."""
    q_value = family.q if q_value is None else q_value
    if isinstance(expr, WickExpr):
        terms = [(m.coeff, m.symbols) for m in expr.monomials]
    else:
        if isinstance(expr, tuple) or (expr and isinstance(expr[0], GenSymbol)):
            expr = raw_word(expr)
        terms = [(term.coeff, tuple(term.symbols)) for term in expr]

    total = SparseOperator.zeros(family.size, family.basis)
    for coeff, symbols in terms:
        total = total + evaluate_word(symbols, family) * coeff.evaluate(q_value)
    return total


def evaluate_word(symbols: SymbolWord, family: OperatorFamily) -> SparseOperator:
    product = SparseOperator.identity(family.size, family.basis)
    for symbol in symbols:
        if not 1 <= symbol.index <= family.n:
            raise AlphabetMismatchError(
                f"Symbol {symbol} outside the {family.n}-generator alphabet of the family"
            )
        k = symbol.index - 1
        product = product @ (family.A_adj[k] if symbol.starred else family.A[k])
    return product
