from typing import Any, Dict, List

from qcuntz.exceptions import ParseError


class SemanticAnalyzer:
    _n: int

    def __init__(self, n: int) -> None:
        self._n = n

    @property
    def n(self) -> int:
        return self._n

    def analyze(self, terms: List[Dict[str, Any]]):
        for term in terms:
            for generator in term["symbols"]:
                index = generator["symbol"].index
                if not 1 <= index <= self.n:
                    raise ParseError(
                        f"Generator index {index} out of range 1..{self.n}", generator["pos"]
                    )
