import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcuntz.exceptions import AlphabetMismatchError, ParseError
from qcuntz.schemas.spec import BoundedPhiJ, Circle, FockQ1, FockQn, LineZ, UnboundedXJ
from qcuntz.wick import (
    GenSymbol,
    QPoly,
    Term,
    confluence_probe,
    evaluate,
    normal_form,
    parse_expr,
    random_words,
    wick_normal_form,
)
from qcuntz.wick.lexical_analysis import WickLexer
from qcuntz.wick.normal_form import find_redex

from tests.conftest import build

symbols = st.builds(GenSymbol, st.integers(min_value=1, max_value=2), st.booleans())
symbol_words = st.lists(symbols, max_size=6).map(tuple)


def test_qpoly_arithmetic_and_format():
    one_plus_q = QPoly({0: 1, 1: 1})
    assert str(one_plus_q) == "1 + q"
    assert str(QPoly.monomial(1) * one_plus_q * one_plus_q) == "q + 2q^2 + q^3"
    assert str(-QPoly.monomial(1)) == "-q"
    assert str(QPoly.zero()) == "0"
    assert (one_plus_q - one_plus_q).is_zero
    assert one_plus_q.evaluate(0.5) == pytest.approx(1.5)
    assert QPoly.constant(3) == 3
    assert QPoly({2: 0}).is_zero


def test_lexer_tokens():
    kinds = [token.kind for token in WickLexer().tokenize("2q^3 a1* - a12")]
    assert kinds == ["INT", "QPOW", "GEN", "MINUS", "GEN"]


def test_parse_expr_words():
    assert parse_expr("a1* a1", 2) == [Term(QPoly.one(), (GenSymbol(1, True), GenSymbol(1)))]
    assert parse_expr("a1 a2*", 2) == [Term(QPoly.one(), (GenSymbol(1), GenSymbol(2, True)))]


def test_parse_expr_scalars_and_signs():
    terms = parse_expr("2q a1 - q^2 a2* + 3", 2)
    assert [t.coeff for t in terms] == [QPoly({1: 2}), QPoly({2: -1}), QPoly({0: 3})]
    assert [len(t.symbols) for t in terms] == [1, 1, 0]


@pytest.mark.parametrize(
    "text, offset",
    [
        ("a0", 0),
        ("a1 a3", 3),
        ("a1 # a2", 3),
        ("a1 +", 4),
        ("a1 a2 2", 6),
    ],
)
def test_parse_errors_carry_the_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text, 2)
    assert info.value.offset == offset
    assert f"offset {offset}" in info.value.message


def test_parse_empty_expression():
    with pytest.raises(ParseError):
        parse_expr("   ", 2)


def test_distinct_generators_annihilate():
    assert normal_form((GenSymbol(1, True), GenSymbol(2))).is_zero
    assert str(normal_form((GenSymbol(1, True), GenSymbol(2)))) == "0"


def test_single_rewrite():
    expr = wick_normal_form("a1* a1", 1)
    assert expr.coefficient() == 1
    assert expr.coefficient([1], [1]) == QPoly.monomial(1)
    assert str(expr) == "1 + q a1 a1*"


def test_two_level_rewrite():
    expr = wick_normal_form("a1* a1* a1 a1", 2)
    assert expr.coefficient() == QPoly({0: 1, 1: 1})
    assert expr.coefficient([1], [1]) == QPoly({1: 1, 2: 2, 3: 1})
    assert expr.coefficient([1, 1], [1, 1]) == QPoly.monomial(4)
    assert len(expr) == 3
    assert str(expr) == "1 + q + (q + 2q^2 + q^3) a1 a1* + q^4 a1 a1 a1* a1*"


def test_normal_words_are_fixed():
    word = (GenSymbol(1), GenSymbol(1), GenSymbol(2, True))
    for strategy in ("leftmost", "rightmost"):
        expr = normal_form(word, strategy)
        assert [m.symbols for m in expr] == [word]


def test_dead_word_under_both_strategies():
    word = tuple(t for t in parse_expr("a1* a2 a1", 2)[0].symbols)
    assert normal_form(word, "leftmost").is_zero
    assert normal_form(word, "rightmost").is_zero


def test_negative_terms_cancel():
    assert wick_normal_form("a1* a1 - 1 - q a1 a1*", 1).is_zero


def test_confluence_probe():
    report = confluence_probe(n=2, max_len=6, trials=200, seed=0)
    assert report.mismatches == 0
    assert report.passed


def test_evaluate_empty_monomial_is_identity(fock1_family):
    result = evaluate([Term(QPoly.one(), ())], fock1_family)
    assert np.allclose(result.to_dense(), np.eye(fock1_family.size))


def test_evaluate_orthogonality(fockn_family):
    result = evaluate(parse_expr("a1* a2", 2), fockn_family)
    assert np.max(result.column_norms(sorted(fockn_family.basis.interior(2)))) == 0.0


def test_evaluate_checks_the_alphabet(fock1_family):
    with pytest.raises(AlphabetMismatchError):
        evaluate(parse_expr("a2", 2), fock1_family)


def test_normal_form_agrees_with_matrices(fock1_family):
    family = build(fock1_family.spec, s_max=10)
    raw = evaluate(parse_expr("a1* a1* a1 a1", 1), family)
    normal = evaluate(wick_normal_form("a1* a1* a1 a1", 1), family)
    ordinals = sorted(family.basis.interior(4))
    assert np.max((raw - normal).column_norms(ordinals)) < 1e-12


@given(symbol_words)
def test_strategies_agree(word):
    assert normal_form(word, "leftmost") == normal_form(word, "rightmost")


@given(symbol_words)
def test_normal_form_has_no_redex(word):
    for monomial in normal_form(word):
        assert find_redex(monomial.symbols) is None



@pytest.mark.parametrize(
    "spec, trunc",
    [
        (FockQ1(q=0.5), {"s_max": 14}),
        (Circle(q=0.5, phi=1.0), {}),
        (LineZ(q=0.5, x=2.8), {"s_min": -8, "s_max": 8}),
        (FockQn(q=0.3, n=2), {"L": 7}),
        (UnboundedXJ(q=0.5, n=2, j=1, x=2.8), {"L": 7, "s_min": -7, "s_max": 7}),
        (BoundedPhiJ(q=0.3, n=2, j=2, phi=0.25), {"L": 7}),
    ],
    ids=lambda value: getattr(value, "family", None),
)
def test_rewriting_preserves_the_operator(spec, trunc):
    family = build(spec, **trunc)
    ordinals = sorted(family.basis.interior(6))
    assert ordinals
    for word in random_words(family.n, 6, 200, seed=11):
        raw = evaluate(word, family)
        difference = raw - evaluate(normal_form(word), family)
        scale = max(1.0, float(np.max(raw.column_norms(ordinals))))
        assert np.max(difference.column_norms(ordinals)) <= 1e-10 * scale, word
