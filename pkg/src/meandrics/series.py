"""Exact truncated power series.

``TruncatedSeries`` is a dense univariate series ``c_0 + c_1 s + ... + c_M s^M``
with rational coefficients.  ``Series`` is a sparse multivariate series whose
truncation is by a weighted total degree; variables of weight zero (such as
the ``z`` of a planar ``r(z)``) are carried along untruncated.  Its
coefficients only need ring operations, so Laurent polynomials in ``N`` work
as well as rationals.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .limits import ConsistencyError


class TruncatedSeries:
    __slots__ = ("c",)

    def __init__(self, coeffs, order: int | None = None):
        c = [Fraction(x) for x in coeffs]
        if order is not None:
            c = (c + [Fraction(0)] * (order + 1 - len(c)))[: order + 1]
        if not c:
            raise ValueError("a truncated series needs at least one coefficient")
        self.c = c

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls([1], order)

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls([0], order)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        m = min(self.order, other.order)
        return self.c[: m + 1] == other.c[: m + 1]

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(x) for x in self.c]})"

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.c[: order + 1])

    def _common(self, other):
        if isinstance(other, TruncatedSeries):
            m = min(self.order, other.order)
            return m, other.c
        return self.order, [Fraction(other)]

    def __add__(self, other) -> TruncatedSeries:
        m, oc = self._common(other)
        return TruncatedSeries(
            [self[k] + (oc[k] if k < len(oc) else 0) for k in range(m + 1)]
        )

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-x for x in self.c])

    def __sub__(self, other) -> TruncatedSeries:
        return self + (-other if isinstance(other, TruncatedSeries) else -Fraction(other))

    def __rsub__(self, other) -> TruncatedSeries:
        return (-self) + other

    def __mul__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            f = Fraction(other)
            return TruncatedSeries([x * f for x in self.c])
        m = min(self.order, other.order)
        a, b = self.c, other.c
        out = []
        for k in range(m + 1):
            acc = Fraction(0)
            for i in range(k + 1):
                ai = a[i]
                if ai:
                    acc += ai * b[k - i]
            out.append(acc)
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> TruncatedSeries:
        a0 = self.c[0]
        if not a0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [1 / a0]
        for k in range(1, self.order + 1):
            acc = sum((self.c[i] * out[k - i] for i in range(1, k + 1)), Fraction(0))
            out.append(-acc / a0)
        return TruncatedSeries(out)

    def __truediv__(self, other) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def divide_by_variable(self) -> TruncatedSeries:
        """Exact division by ``s``; the constant term must vanish."""
        if self.c[0]:
            raise ConsistencyError(
                f"division by s with nonzero constant term {self.c[0]}"
            )
        if self.order == 0:
            raise ValueError("nothing left after dividing an order-0 series by s")
        return TruncatedSeries(self.c[1:])

    def derivative(self) -> TruncatedSeries:
        if self.order == 0:
            return TruncatedSeries([0])
        return TruncatedSeries([k * self.c[k] for k in range(1, self.order + 1)])

    def log(self) -> TruncatedSeries:
        if self.c[0] != 1:
            raise ValueError("log needs constant term 1")
        # (log f)' = f'/f
        d = self.derivative() * self.truncate(self.order - 1).inverse() if self.order else None
        out = [Fraction(0)]
        if d is not None:
            out += [d.c[k] / (k + 1) for k in range(self.order)]
        return TruncatedSeries(out)

    def exp(self) -> TruncatedSeries:
        if self.c[0]:
            raise ValueError("exp needs zero constant term")
        # g = exp(f): k g_k = sum_{j=1}^k j f_j g_{k-j}
        g = [Fraction(1)]
        for k in range(1, self.order + 1):
            acc = sum((j * self.c[j] * g[k - j] for j in range(1, k + 1)), Fraction(0))
            g.append(acc / k)
        return TruncatedSeries(g)

    def __call__(self, x):
        return sum((ck * Fraction(x) ** k for k, ck in enumerate(self.c)), Fraction(0))


def rising(x, k: int):
    """Rising factorial ``x (x+1) ... (x+k-1)``."""
    out = Fraction(1) if isinstance(x, Fraction) else 1
    for i in range(k):
        out *= x + i
    return out


def binomial_series(alpha, order: int) -> TruncatedSeries:
    """Coefficients of ``(1 + s)^alpha`` for rational ``alpha``."""
    alpha = Fraction(alpha)
    out = [Fraction(1)]
    for k in range(1, order + 1):
        out.append(out[-1] * (alpha - k + 1) / k)
    return TruncatedSeries(out)


class Series:
    """Sparse multivariate power series truncated in weighted degree.

    ``terms`` maps exponent tuples to coefficients.  A term survives while
    ``sum(w_i e_i) <= order``.
    """

    __slots__ = ("names", "weights", "order", "terms", "_zero")

    def __init__(self, names, weights, order: int, terms=None, zero=Fraction(0)):
        self.names = tuple(names)
        self.weights = tuple(weights)
        if len(self.names) != len(self.weights):
            raise ValueError("names and weights differ in length")
        self.order = order
        self._zero = zero
        self.terms = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if self._weight(e) <= order and c:
                    self.terms[e] = self.terms.get(e, zero) + c

    def _weight(self, e) -> int:
        return sum(w * k for w, k in zip(self.weights, e))

    def _like(self, terms) -> Series:
        s = Series(self.names, self.weights, self.order, zero=self._zero)
        s.terms = terms
        return s

    @property
    def nvars(self) -> int:
        return len(self.names)

    def constant(self, c) -> Series:
        return self._like({(0,) * self.nvars: c} if c else {})

    def variable(self, name: str, coeff=1) -> Series:
        i = self.names.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return self._like({tuple(e): coeff} if self._weight(e) <= self.order else {})

    def monomial(self, exponents, coeff=1) -> Series:
        e = tuple(exponents)
        return self._like({e: coeff} if self._weight(e) <= self.order else {})

    def coefficient(self, exponents):
        return self.terms.get(tuple(exponents), self._zero)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self._zero)

    def __add__(self, other) -> Series:
        if not isinstance(other, Series):
            other = self.constant(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, self._zero) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Series:
        if not isinstance(other, Series):
            other = self.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> Series:
        return (-self) + other

    def scale(self, c) -> Series:
        return self._like({e: v * c for e, v in self.terms.items() if v * c})

    def __mul__(self, other) -> Series:
        if not isinstance(other, Series):
            return self.scale(other)
        out: dict = {}
        order = self.order
        ws = self.weights
        a = [(e, c, sum(w * k for w, k in zip(ws, e))) for e, c in self.terms.items()]
        b = [(e, c, sum(w * k for w, k in zip(ws, e))) for e, c in other.terms.items()]
        for e1, c1, w1 in a:
            for e2, c2, w2 in b:
                if w1 + w2 > order:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                p = c1 * c2
                if e in out:
                    out[e] = out[e] + p
                else:
                    out[e] = p
        return self._like({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Series:
        result = self.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def positive_weight_part(self) -> Series:
        return self._like({e: c for e, c in self.terms.items() if self._weight(e) > 0})

    def _nilpotent_check(self, u: Series) -> None:
        if any(self._weight(e) == 0 for e in u.terms):
            raise ValueError("series has weight-zero terms beyond the constant")

    def log1p(self) -> Series:
        """``log(1 + u)`` for ``u`` without weight-zero terms."""
        self._nilpotent_check(self)
        result = self._like({})
        power = self.constant(1)
        min_w = min((w for w in self.weights if w > 0), default=1)
        for j in range(1, self.order // min_w + 1):
            power = power * self
            if not power.terms:
                break
            result = result + power.scale(Fraction((-1) ** (j + 1), j))
        return result

    def log(self) -> Series:
        """Logarithm of a series whose constant term is exactly 1."""
        if self.constant_term() != 1:
            raise ValueError("log needs constant term 1")
        return (self - 1).log1p()

    def exp(self) -> Series:
        self._nilpotent_check(self)
        result = self.constant(1)
        term = self.constant(1)
        min_w = min((w for w in self.weights if w > 0), default=1)
        for j in range(1, self.order // min_w + 1):
            term = (term * self).scale(Fraction(1, j))
            if not term.terms:
                break
            result = result + term
        return result

    def map_coefficients(self, fn) -> Series:
        out = {}
        for e, c in self.terms.items():
            v = fn(e, c)
            if v:
                out[e] = v
        return self._like(out)

    def truncated(self, order: int) -> Series:
        s = Series(self.names, self.weights, order, zero=self._zero)
        s.terms = {e: c for e, c in self.terms.items() if self._weight(e) <= order}
        return s

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self) -> str:
        return f"Series({self.names}, order={self.order}, {len(self.terms)} terms)"


def double_factorial(n: int) -> int:
    """``n!!`` with ``(-1)!! = 0!! = 1``."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


__all__ = [
    "TruncatedSeries",
    "Series",
    "rising",
    "binomial_series",
    "double_factorial",
    "factorial",
]
