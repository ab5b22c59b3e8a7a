from qcuntz.wick.confluence import confluence_probe, random_words
from qcuntz.wick.evaluate import evaluate, evaluate_word
from qcuntz.wick.lexical_analysis import WickLexer
from qcuntz.wick.normal_form import NormalMonomial, WickExpr, normal_form
from qcuntz.wick.qpoly import QPoly
from qcuntz.wick.semantic_analysis import SemanticAnalyzer
from qcuntz.wick.symbols import GenSymbol, RawExpr, Term
from qcuntz.wick.syntactic_analysis import WickParser


def parse_expr(text: str, n: int) -> RawExpr:
    # Lexical analysis
    lexer = WickLexer()
    tokens = lexer.tokenize(text)

    # Syntax parsing
    parser = WickParser(tokens, length=len(text))
    parsed = parser.parse()

    # Semantic analysis
    analyzer = SemanticAnalyzer(n)
    analyzer.analyze(parsed)

    return [
        Term(term["coeff"], tuple(g["symbol"] for g in term["symbols"])) for term in parsed
    ]


def wick_normal_form(text: str, n: int) -> WickExpr:
    return normal_form(parse_expr(text, n))
