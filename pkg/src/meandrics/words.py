"""Planar Gaussian averages of words in several matrices.

``gamma_word(w)`` is the large-N limit of ``<(1/N) Tr(M_{w_1} ... M_{w_p})>``
for independent Gaussian matrices: the number of noncrossing perfect
matchings of the letters of ``w`` that only join equal letters.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .arches import catalan
from .limits import check_work


def gamma_word(word: Sequence[int]) -> int:
    """Color-respecting noncrossing matchings, by interval dynamic programming."""
    w = tuple(word)
    L = len(w)
    if L % 2:
        return 0
    if L == 0:
        return 1
    # f[i][j] for the half-open interval w[i:j]; only even lengths are nonzero
    f = [[0] * (L + 1) for _ in range(L + 1)]
    for i in range(L + 1):
        f[i][i] = 1
    for length in range(2, L + 1, 2):
        for i in range(0, L - length + 1):
            j = i + length
            c = w[i]
            total = 0
            for m in range(i + 1, j, 2):
                if w[m] == c:
                    inner = f[i + 1][m]
                    if inner:
                        total += inner * f[m + 1][j]
            f[i][j] = total
    return f[0][L]


def eta(m: int) -> int:
    """One-matrix planar moment: ``catalan(m/2)`` for even ``m``, else 0."""
    return catalan(m // 2) if m % 2 == 0 else 0


def block_word(blocks: Sequence[int], colors: int = 2, start: int = 1) -> tuple[int, ...]:
    """``M_1^{n_1} M_2^{n_2} ... `` with colors cycling through ``1..colors``."""
    out: list[int] = []
    for i, n in enumerate(blocks):
        out.extend([(start - 1 + i) % colors + 1] * n)
    return tuple(out)


def four_block_formula(n1: int, n2: int, n3: int, n4: int) -> int:
    """Inclusion-exclusion value of ``gamma(1^n1 2^n2 1^n3 2^n4)``."""
    return (
        eta(n1 + n3) * eta(n2) * eta(n4)
        + eta(n2 + n4) * eta(n1) * eta(n3)
        - eta(n1) * eta(n2) * eta(n3) * eta(n4)
    )


def _word_sum(length: int, q: int, value, reduce_symmetry: bool):
    if length == 0:
        return value(())
    if reduce_symmetry:
        # the summand is invariant under color permutations: fix the first letter
        total = 0
        for rest in itertools.product(range(1, q + 1), repeat=length - 1):
            total += value((1,) + rest)
        return q * total
    return sum(value(w) for w in itertools.product(range(1, q + 1), repeat=length))


def meander_poly_via_words(
    n: int, q: int, max_work: int | None = None, reduce_symmetry: bool = True
) -> int:
    """``sum_w gamma(w)^2`` over colour words of length 2n; equals ``m_{2n}(q)``."""
    if n < 1 or q < 1:
        raise ValueError("n and q must be positive")
    check_work(q ** (2 * n), max_work, f"word sum over {q}^{2 * n} words")
    return _word_sum(2 * n, q, lambda w: gamma_word(w) ** 2, reduce_symmetry)


def semimeander_poly_via_words(
    n: int, q: int, max_work: int | None = None, reduce_symmetry: bool = True
) -> int:
    """``sum_w gamma(w reversed(w))`` over colour words of length n; equals ``mbar_n(q)``."""
    if n < 1 or q < 1:
        raise ValueError("n and q must be positive")
    check_work(q**n, max_work, f"word sum over {q}^{n} words")
    return _word_sum(n, q, lambda w: gamma_word(w + w[::-1]), reduce_symmetry)


# ---------------------------------------------------------------------------
# root-of-unity recursion, checked in exact cyclotomic arithmetic


def cyclotomic(k: int) -> list[int]:
    """Integer coefficients of the k-th cyclotomic polynomial, lowest first."""
    if k < 1:
        raise ValueError("k must be positive")
    num = [-1] + [0] * (k - 1) + [1]  # x^k - 1
    for d in range(1, k):
        if k % d == 0:
            num = _exact_divide(num, cyclotomic(d))
    return num


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


def _reduce(poly: list[int], modulus: list[int]) -> list[int]:
    p = list(poly)
    deg = len(modulus) - 1
    for i in range(len(p) - 1, deg - 1, -1):
        c = p[i]
        if c:
            for j, d in enumerate(modulus):
                p[i - deg + j] -= c * d
    return p[:deg]


def root_of_unity_residual(blocks: Sequence[int], colors: int) -> list[int]:
    """Residual of the quadratic root-of-unity recursion for a block word.

    For blocks ``n_1..n_L`` with colours cycling through ``1..k``, the
    planar averages satisfy
    ``eta(n_1..n_L) = -sum_{i=1}^{L-1} w^i eta(n_1..n_i) eta(n_{i+1}..n_L)``
    with ``w = exp(2 i pi / k)`` whenever ``k`` divides ``L``.  The residual
    ``lhs - rhs`` is returned as an element of ``Z[x]/Phi_k``; it is the
    zero list exactly when the identity holds.
    """
    k = colors
    L = len(blocks)
    if L == 0 or L % k:
        raise ValueError("the number of blocks must be a positive multiple of the colour count")
    acc = [0] * k  # coefficients of w^0..w^(k-1)
    acc[0] += gamma_word(block_word(blocks, k))
    for i in range(1, L):
        left = gamma_word(block_word(blocks[:i], k))
        right = gamma_word(block_word(blocks[i:], k, start=i + 1))
        acc[i % k] += left * right
    return _reduce(acc, cyclotomic(k))
