from typing import Any, Dict, List, Optional

from qcuntz.exceptions import ParseError
from qcuntz.wick.lexical_analysis import Token
from qcuntz.wick.qpoly import QPoly
from qcuntz.wick.symbols import GenSymbol


class WickParser:
    """Recursive-descent parser for ``expr := ['-'] term (('+' | '-') term)*``.

    A term is a run of scalars (integers and powers of q) followed by a run
    of generators. Parsed terms are dictionaries holding the signed
    coefficient and the generators together with their source offsets.
    """

    def __init__(self, tokens: List[Token], length: int = 0):
        self.tokens = tokens
        self.pos = 0
        self.length = length

    def current_token(self) -> Optional[Token]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def consume(self, expected: Optional[str] = None) -> Token:
        token = self.current_token()
        if token is None:
            raise ParseError("Unexpected end of input", self.length)

        if expected and token.kind != expected:
            raise ParseError(f"Expected {expected}, got {token.value!r}", token.pos)

        self.pos += 1
        return token

    def parse(self) -> List[Dict[str, Any]]:
        if self.current_token() is None:
            raise ParseError("Empty expression", 0)

        sign = 1
        if self.current_token().kind == "MINUS":
            self.consume("MINUS")
            sign = -1
        terms = [self.parse_term(sign)]

        while self.current_token() is not None:
            token = self.current_token()
            if token.kind not in ("PLUS", "MINUS"):
                raise ParseError(f"Expected '+' or '-', got {token.value!r}", token.pos)
            self.consume()
            terms.append(self.parse_term(-1 if token.kind == "MINUS" else 1))

        return terms

    def parse_term(self, sign: int) -> Dict[str, Any]:
        start = self.current_token()
        coeff = QPoly.constant(sign)
        while self.current_token() is not None and self.current_token().kind in ("INT", "QPOW"):
            coeff = coeff * self.parse_scalar()

        symbols = []
        while self.current_token() is not None and self.current_token().kind == "GEN":
            symbols.append(self.parse_generator())

        if self.current_token() is start:
            token = self.current_token()
            if token is None:
                raise ParseError("Expected a term, got end of input", self.length)
            raise ParseError(f"Expected a term, got {token.value!r}", token.pos)

        return {"coeff": coeff, "symbols": symbols}

    def parse_scalar(self) -> QPoly:
        token = self.consume()
        if token.kind == "INT":
            return QPoly.constant(int(token.value))
        exponent = int(token.value[2:]) if "^" in token.value else 1
        return QPoly.monomial(exponent)

    def parse_generator(self) -> Dict[str, Any]:
        token = self.consume("GEN")
        starred = token.value.endswith("*")
        index = int(token.value[1:-1] if starred else token.value[1:])
        return {"symbol": GenSymbol(index, starred), "pos": token.pos}
