"""Vertex-tricoloured triangulations through a bilinear recursion.

``Z_n(a, b)`` is a formal series in ``s = t/N``; its logarithm
``F_n(a, b) = sum_m s^m omega_m(a, b, n)`` counts connected tricoloured
triangulations with weights ``a, b, n`` per vertex of each colour.  From
``Z_0 = 1`` and the closed form of ``Z_1``, the recursion

    n s Z_{n+1}(a+1, b+1) Z_{n-1}(a, b)
        = Z_n(a+1, b+1) Z_n(a, b) - Z_n(a, b+1) Z_n(a+1, b)

determines every ``Z_n``.  Each step divides by ``s`` and so loses one
order of the series; ``Z_1`` is built with enough extra orders to end at
the requested one.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .limits import ConsistencyError
from .series import TruncatedSeries, rising


def z1_series(a, b, order: int) -> TruncatedSeries:
    """``Z_1(a, b) = sum_k s^k (a)_k (b)_k / k!`` with rising factorials."""
    a, b = Fraction(a), Fraction(b)
    out = []
    ra = rb = Fraction(1)
    fk = 1
    for k in range(order + 1):
        if k:
            ra *= a + k - 1
            rb *= b + k - 1
            fk *= k
        out.append(ra * rb / fk)
    return TruncatedSeries(out)


@dataclass
class GridSeries:
    """``Z_n(a0 + i, b0 + j)`` for ``0 <= n <= n_max`` on a ``G x G`` grid.

    ``Z_n`` is stored for ``n - 1 <= i, j < G`` (all points for ``n = 0``).
    """

    a0: Fraction
    b0: Fraction
    G: int
    n_max: int
    order: int
    values: dict

    def Z(self, n: int, i: int, j: int) -> TruncatedSeries:
        try:
            return self.values[(n, i, j)]
        except KeyError:
            raise KeyError(f"Z_{n} not available at grid point ({i}, {j})") from None

    def at(self, n: int, a, b) -> TruncatedSeries:
        i = Fraction(a) - self.a0
        j = Fraction(b) - self.b0
        if i.denominator != 1 or j.denominator != 1:
            raise KeyError("point is not on the grid")
        return self.Z(n, int(i), int(j)).truncate(self.order)

    def F(self, n: int, a, b) -> TruncatedSeries:
        return self.at(n, a, b).log()


def hirota_grid(a0, b0, G: int, n_max: int, order: int) -> GridSeries:
    """Run the recursion up to ``Z_{n_max}`` on a grid of side ``G``."""
    if G < n_max:
        raise ValueError(f"grid side {G} too small for n_max = {n_max}")
    if n_max < 0 or order < 0:
        raise ValueError("n_max and order must be nonnegative")
    a0, b0 = Fraction(a0), Fraction(b0)
    top = order + max(n_max - 1, 0)
    vals: dict = {}
    one = TruncatedSeries.one(top)
    for i in range(G):
        for j in range(G):
            vals[(0, i, j)] = one
            if n_max >= 1:
                vals[(1, i, j)] = z1_series(a0 + i, b0 + j, top)
    for n in range(1, n_max):
        for i in range(n - 1, G - 1):
            for j in range(n - 1, G - 1):
                num = (
                    vals[(n, i + 1, j + 1)] * vals[(n, i, j)]
                    - vals[(n, i, j + 1)] * vals[(n, i + 1, j)]
                )
                if num[0]:
                    raise ConsistencyError(
                        f"Hirota numerator has constant term {num[0]} at n={n}, ({i}, {j})"
                    )
                vals[(n + 1, i + 1, j + 1)] = num.divide_by_variable() / (
                    vals[(n - 1, i, j)].truncate(num.order - 1) * n
                )
    return GridSeries(a0, b0, G, n_max, order, vals)


def hirota_value(n: int, a, b, order: int) -> TruncatedSeries:
    """``Z_n(a, b)`` from the smallest grid that reaches it."""
    if n == 0:
        return TruncatedSeries.one(order)
    a, b = Fraction(a), Fraction(b)
    grid = hirota_grid(a - (n - 1), b - (n - 1), n, n, order)
    return grid.Z(n, n - 1, n - 1).truncate(order)


def _increasing_tuples(n: int, budget: int):
    """``k_1 < ... < k_n`` (``k_i >= i - 1``) with ``sum (k_i - i + 1) <= budget``."""
    def rec(i, lo, left):
        if i > n:
            yield ()
            return
        # k_i - (i - 1) is nondecreasing in i, so later terms cost at least as much
        k = lo
        while (k - (i - 1)) * (n - i + 1) <= left:
            for rest in rec(i + 1, k + 1, left - (k - (i - 1))):
                yield (k,) + rest
            k += 1

    yield from rec(1, 0, budget)


def determinant_oracle(n: int, a, b, order: int) -> TruncatedSeries:
    """``Z_n(a, b)`` from the direct sum over ``n`` distinct nonnegative integers.

    With the ``k_i`` sorted increasingly each gamma ratio becomes a rising
    factorial ``(a - n + i)_{k_i - i + 1}``, so no input produces a pole.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = Fraction(a), Fraction(b)
    out = [Fraction(0)] * (order + 1)
    if n == 0:
        out[0] = Fraction(1)
        return TruncatedSeries(out)
    pref = Fraction(factorial(n))
    for i in range(1, n + 1):
        pref /= factorial(i)
    for ks in _increasing_tuples(n, order):
        power = sum(k - i for i, k in enumerate(ks))
        vd = 1
        for x, y in itertools.combinations(ks, 2):
            vd *= y - x
        term = Fraction(vd * vd)
        for i, k in enumerate(ks, start=1):
            m = k - i + 1
            term *= rising(a - n + i, m) * rising(b - n + i, m) / factorial(k)
        out[power] += term
    return TruncatedSeries([x * pref for x in out])


# ---------------------------------------------------------------------------
# omega polynomials


@dataclass(frozen=True)
class OmegaPolynomial:
    """``omega_m`` as ``{(i, j, k): coeff}`` for the monomial ``a^i b^j n^k``."""

    m: int
    coeffs: dict

    def __call__(self, a, b, n) -> Fraction:
        a, b, n = Fraction(a), Fraction(b), Fraction(n)
        return sum(
            (c * a**i * b**j * n**k for (i, j, k), c in self.coeffs.items()), Fraction(0)
        )

    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def variable_degrees(self) -> tuple[int, int, int]:
        return tuple(max((e[v] for e in self.coeffs), default=0) for v in range(3))

    def divisible_by_abn(self) -> bool:
        return all(min(e) >= 1 for e in self.coeffs)

    def quotient_by_abn(self) -> dict:
        if not self.divisible_by_abn():
            raise ValueError("polynomial is not divisible by a*b*n")
        return {(i - 1, j - 1, k - 1): c for (i, j, k), c in self.coeffs.items()}

    def permuted(self, perm) -> OmegaPolynomial:
        """Reorder variables: new exponent tuple is ``(e[perm[0]], e[perm[1]], e[perm[2]])``."""
        return OmegaPolynomial(
            self.m, {tuple(e[p] for p in perm): c for e, c in self.coeffs.items()}
        )

    def is_symmetric(self) -> bool:
        return all(
            self.permuted(p).coeffs == self.coeffs for p in itertools.permutations(range(3))
        )

    def top_part(self) -> OmegaPolynomial:
        d = self.total_degree()
        return OmegaPolynomial(self.m, {e: c for e, c in self.coeffs.items() if sum(e) == d})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        names = ("a", "b", "n")
        parts = []
        for e in sorted(self.coeffs, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.coeffs[e]
            mono = "*".join(
                (v if p == 1 else f"{v}^{p}") for v, p in zip(names, e) if p
            )
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}*{mono}" if mono else f"{mag}")
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _newton_to_monomial(values: list[Fraction]) -> list[Fraction]:
    """Coefficients of the polynomial through ``(x, values[x])``, ``x = 0..d``."""
    d = len(values) - 1
    dd = list(values)
    # divided differences on nodes 0..d
    for level in range(1, d + 1):
        for x in range(d, level - 1, -1):
            dd[x] = (dd[x] - dd[x - 1]) / level
    # expand sum dd[k] prod_{i<k} (x - i) by Horner from the top
    poly = [Fraction(0)] * (d + 1)
    for k in range(d, -1, -1):
        # poly = poly * (x - k) + dd[k]
        new = [Fraction(0)] * (d + 1)
        for p, c in enumerate(poly):
            if c:
                if p + 1 <= d:
                    new[p + 1] += c
                new[p] -= k * c
        new[0] += dd[k]
        poly = new
    return poly


def interpolate_trivariate(values, deg: int) -> dict:
    """Polynomial of per-variable degree ``deg`` through ``values[(a, b, n)]``, nodes ``0..deg``."""
    rng = range(deg + 1)
    # along n
    step1 = {}
    for a in rng:
        for b in rng:
            coeffs = _newton_to_monomial([Fraction(values[(a, b, n)]) for n in rng])
            for k, c in enumerate(coeffs):
                step1[(a, b, k)] = c
    step2 = {}
    for a in rng:
        for k in rng:
            coeffs = _newton_to_monomial([step1[(a, b, k)] for b in rng])
            for j, c in enumerate(coeffs):
                step2[(a, j, k)] = c
    out = {}
    for j in rng:
        for k in rng:
            coeffs = _newton_to_monomial([step2[(a, j, k)] for a in rng])
            for i, c in enumerate(coeffs):
                if c:
                    out[(i, j, k)] = c
    return out


def omega_grid_values(m_max: int, extent: int | None = None) -> dict:
    """``{(m, a, b, n): [s^m] F_n(a, b)}`` for integers ``0 <= a, b, n <= extent``."""
    D = m_max + 1 if extent is None else extent
    n_max = D
    shift = max(n_max - 1, 0)
    grid = hirota_grid(-shift, -shift, D + 1 + shift, n_max, m_max)
    out = {}
    for n in range(n_max + 1):
        for a in range(D + 1):
            for b in range(D + 1):
                F = grid.F(n, a, b)
                for m in range(1, m_max + 1):
                    out[(m, a, b, n)] = F[m]
    return out


def omega_polynomials(m_max: int) -> list[OmegaPolynomial]:
    """``[omega_1, ..., omega_{m_max}]`` reconstructed by exact interpolation.

    Each ``omega_m`` is first fitted with per-variable degree ``m`` on the
    nodes ``0..m`` and then checked on every remaining grid node.  If the
    check fails the degree bound is raised (with a warning) while spare
    nodes remain.
    """
    if m_max < 1:
        raise ValueError("m_max must be positive")
    extent = m_max + 2
    vals = omega_grid_values(m_max, extent)
    out = []
    for m in range(1, m_max + 1):
        sub = {(a, b, n): vals[(m, a, b, n)] for a in range(extent + 1)
               for b in range(extent + 1) for n in range(extent + 1)}
        deg = m
        while True:
            coeffs = interpolate_trivariate(sub, deg)
            poly = OmegaPolynomial(m, coeffs)
            if all(poly(a, b, n) == v for (a, b, n), v in sub.items()):
                break
            if deg + 1 >= extent:
                raise ConsistencyError(
                    f"omega_{m} is not a polynomial of per-variable degree <= {deg}"
                )
            warnings.warn(f"omega_{m}: raising per-variable degree bound to {deg + 1}")
            deg += 1
        out.append(poly)
    return out


def wick_omega_oracle(m_max: int) -> list[dict]:
    """``omega_m`` from fatgraphs of two alternating colours, as ``{(i, j, k): c}``.

    Vertices ``N a Tr(A^k)/k`` and ``N b Tr(B^k)/k`` with ``A`` only paired to
    ``B``; every face is a third-colour vertex and carries ``N``.  With the
    matrix size read as ``n``, the order-``s^m`` term has ``2m`` half-edges
    and equals ``(coeff / n^V) * n^E``.  Returns coefficients of
    ``a^i b^j n^k``.
    """
    from .wick import PropagatorTable, Vertex, connected_free_energy

    verts = []
    for k in range(1, 2 * m_max):
        verts.append(Vertex((1,) * k, Fraction(1, k), f"a{k}"))
        verts.append(Vertex((2,) * k, Fraction(1, k), f"b{k}"))
    F = connected_free_energy(
        verts, PropagatorTable.alternating(), order=2 * m_max, truncate_by="half_edges"
    )
    out = [dict() for _ in range(m_max)]
    for e, lp in F.terms.items():
        H = sum(len(v.word) * x for v, x in zip(verts, e))
        if H % 2 or H == 0:
            continue
        m = H // 2
        na = sum(x for v, x in zip(verts, e) if v.word[0] == 1)
        nb = sum(x for v, x in zip(verts, e) if v.word[0] == 2)
        V = na + nb
        for p, c in lp.coeffs.items():
            key = (na, nb, p - V + m)
            out[m - 1][key] = out[m - 1].get(key, 0) + c
    return [{k: v for k, v in d.items() if v} for d in out]


# ---------------------------------------------------------------------------
# genus zero


@dataclass(frozen=True)
class GenusZero:
    F1: TruncatedSeries
    F2: TruncatedSeries
    F3: TruncatedSeries
    f0: TruncatedSeries


def genus_zero_system(x1, x2, x3, order: int) -> GenusZero:
    """Solve ``F_i (1 - F_j - F_k) = t x_i`` and assemble ``f_0``.

    The normalization is ``(t d/dt)^2 f_0 = F_1 F_2 F_3 / t^2``, so
    ``[t^m] f_0 = [t^{m+2}](F_1 F_2 F_3) / m^2``; its ``t^m`` coefficient is
    the top-degree part of ``omega_m`` at ``(a, b, n) = (x1, x2, x3)``.
    """
    xs = [Fraction(x1), Fraction(x2), Fraction(x3)]
    top = order + 2
    t = TruncatedSeries([0, 1], top)
    F = [t * x for x in xs]
    for _ in range(top):
        F = [
            t * xs[i] / (1 - F[(i + 1) % 3] - F[(i + 2) % 3])
            for i in range(3)
        ]
    prod = F[0] * F[1] * F[2]
    f0 = [Fraction(0)] + [prod[m + 2] / (m * m) for m in range(1, order + 1)]
    return GenusZero(F[0], F[1], F[2], TruncatedSeries(f0))


def tutte_series(z, order: int) -> TruncatedSeries:
    """``(1 - sqrt(1 - 8 t z))/4`` expanded in ``t``."""
    from .series import binomial_series

    root = binomial_series(Fraction(1, 2), order)
    z = Fraction(z)
    coeffs = [-root[k] * (-8 * z) ** k / 4 for k in range(order + 1)]
    coeffs[0] = Fraction(0)
    return TruncatedSeries(coeffs)


# ---------------------------------------------------------------------------
# finite-difference form


def finite_difference_residual(grid: GridSeries, n: int, a, b) -> TruncatedSeries:
    """``d_a d_b F_n(a,b) + log(1 - n s exp(d_n F_n(a+1,b+1) - d_n F_{n-1}(a,b)))``.

    ``d_x f(x) = f(x+1) - f(x)``.  Needs ``Z_{n+1}`` at ``(a+1, b+1)`` and
    ``Z_n`` at the four corners, plus ``Z_{n-1}``, ``Z_n`` at ``(a, b)``.
    """
    a, b = Fraction(a), Fraction(b)
    F = grid.F
    lhs = F(n, a + 1, b + 1) - F(n, a + 1, b) - F(n, a, b + 1) + F(n, a, b)
    dn1 = F(n + 1, a + 1, b + 1) - F(n, a + 1, b + 1)
    dn0 = F(n, a, b) - F(n - 1, a, b)
    expo = (dn1 - dn0).exp()
    s = TruncatedSeries([0, 1], grid.order)
    rhs_arg = 1 - s * expo * n
    return lhs + rhs_arg.log()
