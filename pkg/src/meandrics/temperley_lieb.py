"""Gram matrix of arch configurations and the meander determinant.

The scalar product of two arch configurations is ``q^{c(a,b)}``.  Its
determinant is computed two ways: directly, by fraction-free elimination,
and from the product of Chebyshev polynomials of the second kind.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .arches import ArchConfig, catalan, count_cycles, enumerate_arches
from .limits import check_work
from .polys import LaurentPolynomial, q_poly

DEFAULT_MAX_DIRECT = 5  # largest n for the symbolic direct determinant


@dataclass(frozen=True)
class GramMatrix:
    """Exponent matrix: entry ``(a, b)`` stands for ``q^{exponents[a][b]}``."""

    n: int
    basis: tuple[ArchConfig, ...]
    exponents: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.basis)

    def entry(self, i: int, j: int) -> LaurentPolynomial:
        return q_poly({self.exponents[i][j]: 1})

    def evaluate(self, q) -> list[list]:
        return [[q**e for e in row] for row in self.exponents]


def gram_matrix(n: int, max_size: int | None = None) -> GramMatrix:
    if n < 1:
        raise ValueError("n must be positive")
    check_work(catalan(n), max_size, f"Gram matrix of order {2 * n}")
    basis = tuple(enumerate_arches(n))
    exps = tuple(
        tuple(count_cycles(a.match, b.match) for b in basis) for a in basis
    )
    return GramMatrix(n, basis, exps)


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact integer determinant by Bareiss fraction-free elimination."""
    a = [list(row) for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for r in range(k + 1, size):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, size):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[-1][-1]


def _signed_digits(value: int, base_bits: int) -> dict[int, int]:
    """Balanced base ``2^base_bits`` digits of ``value``."""
    base = 1 << base_bits
    half = base >> 1
    out = {}
    e = 0
    while value:
        d = value & (base - 1)
        if d >= half:
            d -= base
        if d:
            out[e] = d
        value = (value - d) >> base_bits
        e += 1
    return out


def meander_determinant_direct(n: int, max_n: int | None = DEFAULT_MAX_DIRECT) -> LaurentPolynomial:
    """Exact Gram determinant as a polynomial in ``q``.

    Entries are monomials with unit coefficients, so every coefficient of
    the determinant is bounded by ``C!`` for a ``C x C`` matrix.  Substituting
    ``q = 2^B`` with ``2^(B-1)`` above that bound turns the polynomial
    determinant into one integer Bareiss elimination whose balanced base-2^B
    digits are the coefficients.
    """
    if max_n is not None and n > max_n:
        raise ValueError(f"direct determinant limited to n <= {max_n}")
    g = gram_matrix(n)
    bound = factorial(g.size)
    bits = bound.bit_length() + 2
    X = 1 << bits
    det = bareiss_determinant(g.evaluate(X))
    return q_poly(_signed_digits(det, bits))


def determinant_at(n: int, q) -> Fraction:
    """Gram determinant at a rational ``q``, exact.

    With ``q = u/v`` every entry is scaled by ``v^n`` to make it integral.
    """
    q = Fraction(q)
    u, v = q.numerator, q.denominator
    g = gram_matrix(n)
    mat = [[u**e * v ** (n - e) for e in row] for row in g.exponents]
    return Fraction(bareiss_determinant(mat), v ** (n * g.size))


def chebyshev_u(m: int) -> LaurentPolynomial:
    """``U_m(q)`` with ``U_0 = 1``, ``U_1 = q``, ``U_{m+1} = q U_m - U_{m-1}``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    prev, cur = q_poly({0: 1}), q_poly({1: 1})
    if m == 0:
        return prev
    x = q_poly({1: 1})
    for _ in range(m - 1):
        prev, cur = cur, x * cur - prev
    return cur


def _binom(N: int, r: int) -> int:
    return comb(N, r) if 0 <= r <= N else 0


def determinant_exponent(m: int, n: int) -> int:
    """``a_{m,n}``: multiplicity of ``U_m`` in the order-2n determinant."""
    return _binom(2 * n, n - m) - 2 * _binom(2 * n, n - m - 1) + _binom(2 * n, n - m - 2)


def meander_determinant_formula(n: int) -> LaurentPolynomial:
    if n < 1:
        raise ValueError("n must be positive")
    out = q_poly({0: 1})
    for m in range(1, n + 1):
        out = out * chebyshev_u(m) ** determinant_exponent(m, n)
    return out


def formula_at(n: int, q) -> Fraction:
    """Chebyshev product evaluated at a rational ``q``."""
    q = Fraction(q)
    out = Fraction(1)
    prev, cur = Fraction(1), q
    for m in range(1, n + 1):
        out *= cur ** determinant_exponent(m, n)
        prev, cur = cur, q * cur - prev
    return out
