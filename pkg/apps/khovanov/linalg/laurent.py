"""Integer Laurent polynomials in one variable q."""
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Number = Union[int, float, complex]


class LaurentPoly:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] = None):
        self._terms: Dict[int, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff:
                    self._terms[int(exp)] = int(coeff)

    @classmethod
    def q(cls, exp: int = 1, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[int, int]]) -> "LaurentPoly":
        acc: Dict[int, int] = {}
        for exp, coeff in pairs:
            acc[exp] = acc.get(exp, 0) + coeff
        return cls(acc)

    def terms(self) -> Tuple[Tuple[int, int], ...]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return tuple(sorted(self._terms.items()))

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    @property
    def degrees(self) -> Tuple[int, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(self._terms), max(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def shift(self, m: int) -> "LaurentPoly":
        """Multiply by q^m."""
        return LaurentPoly({e + m: c for e, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        """Substitute q → q⁻¹."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def evaluate(self, value: Number):
        if value == 0 and any(e < 0 for e in self._terms):
            raise ZeroDivisionError("negative powers at q = 0")
        if isinstance(value, int):
            value = Fraction(value)
        return sum(c * value**e for e, c in self._terms.items())

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: Dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of a Laurent polynomial are not polynomials in general")
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        return hash(self.terms())

    def __repr__(self):
        return f"LaurentPoly({dict(self.terms())})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


Q = LaurentPoly.q(1)
Q_INV = LaurentPoly.q(-1)
