import re
from typing import List, NamedTuple

from qcuntz.exceptions import ParseError


class Token(NamedTuple):
    kind: str
    value: str
    pos: int


class WickLexer:
    def __init__(self):
        # Expression token patterns
        self.token_specification = [
            ("GEN", r"a\d+\*?"),  # Generator, starred for the adjoint
            ("QPOW", r"q(\^\d+)?"),  # Power of q
            ("INT", r"\d+"),  # Integer scalar
            ("PLUS", r"\+"),  # Summand separator
            ("MINUS", r"-"),  # Negated summand
            ("SKIP", r"\s+"),  # Skip whitespace
            ("MISMATCH", r"."),  # Any other character
        ]

        tok_regex = "|".join(
            f"(?P<{name}>{pattern})" for name, pattern in self.token_specification
        )
        self.get_token = re.compile(tok_regex).match

    def tokenize(self, text: str) -> List[Token]:
        tokens: List[Token] = []
        pos = 0

        while pos < len(text):
            match = self.get_token(text, pos)
            kind = match.lastgroup
            value = match.group()

            if kind == "SKIP":
                pass
            elif kind == "MISMATCH":
                raise ParseError(f"Unexpected character: {value!r}", pos)
            else:
                tokens.append(Token(kind, value, pos))
            pos = match.end()

        return tokens
