"""Sparse univariate Laurent polynomials with exact rational coefficients.

The same structure serves as a polynomial in the loop weight ``q`` and as a
Laurent polynomial in the matrix size ``N``; only the printed variable name
differs.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class LaurentPolynomial:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=None, var: str = "q"):
        self.var = var
        clean: dict[int, Fraction] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for e, c in items:
                c = _frac(c)
                if c:
                    clean[int(e)] = clean.get(int(e), Fraction(0)) + c
            clean = {e: c for e, c in clean.items() if c}
        self.coeffs = clean

    @classmethod
    def monomial(cls, exponent: int, coeff=1, var: str = "q") -> LaurentPolynomial:
        return cls({exponent: coeff}, var)

    @classmethod
    def constant(cls, c, var: str = "q") -> LaurentPolynomial:
        return cls({0: c}, var)

    @classmethod
    def from_list(cls, coeffs, var: str = "q") -> LaurentPolynomial:
        return cls(dict(enumerate(coeffs)), var)

    def _coerce(self, other) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            return other
        return LaurentPolynomial({0: other}, self.var)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other) -> LaurentPolynomial:
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        r = LaurentPolynomial(var=self.var)
        r.coeffs = out
        return r

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        r = LaurentPolynomial(var=self.var)
        r.coeffs = {e: -c for e, c in self.coeffs.items()}
        return r

    def __sub__(self, other) -> LaurentPolynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LaurentPolynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> LaurentPolynomial:
        if not isinstance(other, LaurentPolynomial):
            c = _frac(other)
            r = LaurentPolynomial(var=self.var)
            r.coeffs = {e: v * c for e, v in self.coeffs.items()} if c else {}
            return r
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        r = LaurentPolynomial(var=self.var)
        r.coeffs = {e: c for e, c in out.items() if c}
        return r

    __rmul__ = __mul__

    def __truediv__(self, other) -> LaurentPolynomial:
        if isinstance(other, LaurentPolynomial):
            if len(other.coeffs) != 1:
                raise TypeError("division only by monomials or scalars")
            (e, c), = other.coeffs.items()
            return self.shift(-e) * (1 / c)
        return self * (1 / _frac(other))

    def __pow__(self, k: int) -> LaurentPolynomial:
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = LaurentPolynomial({0: 1}, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> LaurentPolynomial:
        r = LaurentPolynomial(var=self.var)
        r.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return r

    def __call__(self, x):
        """Evaluate exactly at a rational (or numerically at a float)."""
        if isinstance(x, float):
            return sum(float(c) * x**e for e, c in self.coeffs.items())
        x = _frac(x)
        return sum((c * x**e for e, c in self.coeffs.items()), Fraction(0))

    def __getitem__(self, e: int) -> Fraction:
        return self.coeffs.get(e, Fraction(0))

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no valuation")
        return min(self.coeffs)

    def items(self):
        return sorted(self.coeffs.items())

    def to_json(self) -> list[list[int]]:
        """Sorted ``[exponent, numerator, denominator]`` triples."""
        return [[e, c.numerator, c.denominator] for e, c in self.items()]

    @classmethod
    def from_json(cls, data, var: str = "q") -> LaurentPolynomial:
        return cls({e: Fraction(n, d) for e, n, d in data}, var)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs.items(), reverse=True):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if e == 0:
                body = str(a)
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r}, var={self.var!r})"


def q_poly(coeffs=None) -> LaurentPolynomial:
    return LaurentPolynomial(coeffs, "q")


def n_poly(coeffs=None) -> LaurentPolynomial:
    return LaurentPolynomial(coeffs, "N")
