from typing import Dict, Iterator, Mapping, Tuple, Union


class QPoly:
    """Polynomial in q with exact integer coefficients; zero terms are never stored."""

    __slots__ = ("_coefficients",)

    _coefficients: Dict[int, int]

    def __init__(self, coefficients: Mapping[int, int] = None) -> None:
        self._coefficients = {}
        for exponent, value in (coefficients or {}).items():
            if exponent < 0:
                raise ValueError(f"Negative exponent {exponent}")
            if value:
                self._coefficients[int(exponent)] = int(value)

    @property
    def coefficients(self) -> Dict[int, int]:
        return dict(self._coefficients)

    @property
    def is_zero(self) -> bool:
        return not self._coefficients

    @classmethod
    def constant(cls, value: int) -> "QPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, value: int = 1) -> "QPoly":
        return cls({exponent: value})

    @classmethod
    def one(cls) -> "QPoly":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "QPoly":
        return cls()

    def evaluate(self, q: float) -> float:
        return float(sum(value * q**exponent for exponent, value in self._coefficients.items()))

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._coefficients.items()))

    def __add__(self, other: "QPoly") -> "QPoly":
        result = dict(self._coefficients)
        for exponent, value in other._coefficients.items():
            result[exponent] = result.get(exponent, 0) + value
        return QPoly(result)

    def __neg__(self) -> "QPoly":
        return QPoly({e: -v for e, v in self._coefficients.items()})

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other: Union["QPoly", int]) -> "QPoly":
        if isinstance(other, int):
            return QPoly({e: v * other for e, v in self._coefficients.items()})
        result: Dict[int, int] = {}
        for e1, v1 in self._coefficients.items():
            for e2, v2 in other._coefficients.items():
                result[e1 + e2] = result.get(e1 + e2, 0) + v1 * v2
        return QPoly(result)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QPoly.constant(other)
        return isinstance(other, QPoly) and self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._coefficients.items())))

    @property
    def is_single_term(self) -> bool:
        return len(self._coefficients) == 1

    def __str__(self) -> str:
        if not self._coefficients:
            return "0"
        out = ""
        for exponent, value in self.items():
            if exponent == 0:
                body = str(abs(value))
            else:
                power = "q" if exponent == 1 else f"q^{exponent}"
                body = power if abs(value) == 1 else f"{abs(value)}{power}"
            if not out:
                out = body if value > 0 else "-" + body
            else:
                out += (" + " if value > 0 else " - ") + body
        return out

    def __repr__(self) -> str:
        return f"QPoly({self})"
