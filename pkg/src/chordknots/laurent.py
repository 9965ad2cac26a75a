"""Exact one-variable Laurent polynomials with integer coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPoly:
    __slots__ = ("terms", "var")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = (), var: str = "t"):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        self.terms = {e: c for e, c in acc.items() if c}
        self.var = var

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "t") -> "LaurentPoly":
        return cls({exp: coeff}, var)

    @classmethod
    def const(cls, c: int, var: str = "t") -> "LaurentPoly":
        return cls({0: c}, var)

    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        return min(self.terms)

    def max_exp(self) -> int:
        return max(self.terms)

    def leading(self) -> int:
        return self.terms[self.max_exp()]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.var)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.var)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other, self.var)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()}, self.var)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials can be inverted")
            return LaurentPoly({-e * -k: c ** -k}, self.var)
        out = LaurentPoly.const(1, self.var)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.terms.items()}, self.var)

    def substitute_power(self, k: int) -> "LaurentPoly":
        """p(t) -> p(t**k)."""
        return LaurentPoly({e * k: c for e, c in self.terms.items()}, self.var)

    def exact_divide_exponents(self, k: int, var: str | None = None) -> "LaurentPoly":
        if any(e % k for e in self.terms):
            raise ValueError(f"exponents not divisible by {k}")
        return LaurentPoly({e // k: c for e, c in self.terms.items()}, var or self.var)

    def mirror(self) -> "LaurentPoly":
        return LaurentPoly({-e: c for e, c in self.terms.items()}, self.var)

    def evaluate(self, x):
        x = Fraction(x)
        val = sum((c * x ** e for e, c in self.terms.items()), Fraction(0))
        return int(val) if val.denominator == 1 else val

    def __call__(self, x):
        return self.evaluate(x)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                base = self.var if e == 1 else f"{self.var}^{e}"
                body = base if mag == 1 else f"{mag}*{base}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(?:([A-Za-z]\w*)(?:\^\(?(-?\d+)\)?)?)?")


def parse_poly(text: str, var: str = "t") -> LaurentPoly:
    """Inverse of ``str``: ``"-t^2 + 3 - 2*t^-1"``."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return LaurentPoly({}, var)
    terms = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        sign, digits, v, exp = m.groups()
        if not digits and not v:
            raise ValueError(f"cannot parse polynomial {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if v else 0
        if v:
            var = v
        terms.append((e, c))
        pos = m.end()
    return LaurentPoly(terms, var)
