"""One Hermitian matrix with an even potential, via orthogonal polynomials.

Convention: ``V(x) = x^2/2 + sum_i g_{2i} x^{2i}/(2i)`` and the weight is
``exp(-N Tr V(M))``.  The even quartic ``V = x^2/2 - g x^4/4`` is
``g_4 = -g``.  Couplings are formal: every result is an exact truncated
series in them.

With ``Q p_m = p_{m+1} + r_m p_{m-1}`` the string equation reads
``m/N = sum`` over lattice paths from ``m`` to ``m-1`` of the coefficients of
``V'(Q)``: a down-step leaving height ``j`` carries ``r_j``, an up-step 1.
For the quartic this is ``r_m (1 - g (r_{m-1} + r_m + r_{m+1})) = m/N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Mapping

from .limits import DomainError
from .series import Series, TruncatedSeries, binomial_series, double_factorial


@dataclass(frozen=True)
class EvenPotential:
    """Terms ``(2i, name, factor)`` meaning ``g_{2i} = factor * name``."""

    terms: tuple[tuple[int, str, Fraction], ...]

    def __init__(self, terms):
        clean = []
        seen_v, seen_n = set(), set()
        for valency, name, factor in terms:
            valency = int(valency)
            if valency % 2:
                raise DomainError("only even potentials are supported")
            if valency < 4:
                raise DomainError("interaction terms start at x^4")
            if valency in seen_v or name in seen_n:
                raise ValueError("valencies and coupling names must be distinct")
            seen_v.add(valency)
            seen_n.add(name)
            clean.append((valency, str(name), Fraction(factor)))
        object.__setattr__(self, "terms", tuple(sorted(clean)))

    @classmethod
    def quartic(cls) -> EvenPotential:
        """``V = x^2/2 - g x^4/4``."""
        return cls([(4, "g", -1)])

    @classmethod
    def from_mapping(cls, factors: Mapping[int, object]) -> EvenPotential:
        """``{2i: c}``: coupling ``g{2i}`` enters with factor ``c``."""
        return cls([(v, f"g{v}", c) for v, c in factors.items()])

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for _, name, _ in self.terms)

    def space(self, order: int) -> Series:
        return Series(self.names, [1] * len(self.terms), order)

    def couplings(self, order: int) -> list[tuple[int, Series]]:
        """``(2i, g_{2i})`` with ``g_{2i}`` as a series."""
        sp = self.space(order)
        return [(v, sp.variable(name, factor)) for v, name, factor in self.terms]

    def degree_shift(self, exponents) -> int:
        """Power of ``z`` that accompanies a coupling monomial in ``r(z)/z``."""
        return sum((v // 2 - 1) * e for (v, _, _), e in zip(self.terms, exponents))


# ---------------------------------------------------------------------------
# finite N


def _path_weight(r, m: int, length: int, one: Series) -> Series:
    """Sum over paths of ``length`` steps from height ``m`` to ``m - 1``."""
    target = m - 1
    levels = {m: one}
    for step in range(length):
        left = length - step - 1
        nxt: dict[int, Series] = {}
        for h, wgt in levels.items():
            up = h + 1
            if abs(up - target) <= left:
                nxt[up] = nxt[up] + wgt if up in nxt else wgt
            down = h - 1
            if h >= 1 and abs(down - target) <= left:
                term = wgt * r(h)
                if term.terms:
                    nxt[down] = nxt[down] + term if down in nxt else term
        levels = nxt
    return levels.get(target, one.constant(0))


def string_equation_finite_N(
    potential: EvenPotential, N: int, m_max: int, order: int
) -> list[Series]:
    """``[r_1, ..., r_{m_max}]`` as series in the couplings."""
    if N < 1:
        raise ValueError("N must be positive")
    if m_max < 1:
        return []
    gs = potential.couplings(order)
    space = potential.space(order)
    one = space.constant(1)
    reach = max((v // 2 - 1 for v, _ in gs), default=0)
    M = m_max + order * reach
    r = [space.constant(0)] + [space.constant(Fraction(j, N)) for j in range(1, M + 1)]

    def get(j):
        return r[j] if 0 < j <= M else space.constant(0)

    for _ in range(order):
        new = [r[0]]
        for m in range(1, M + 1):
            val = space.constant(Fraction(m, N))
            for v, g in gs:
                val = val - g * _path_weight(get, m, v - 1, one)
            new.append(val)
        r = new
    return r[1 : m_max + 1]


def _gaussian_h0_log(potential: EvenPotential, N: int, order: int) -> Series:
    """``log E[exp(-N sum g_{2i} x^{2i}/(2i))]`` for ``E[x^2] = 1/N``."""
    names = potential.names + ("x",)
    weights = [1] * len(potential.terms) + [0]
    sp = Series(names, weights, order)
    nv = len(potential.terms)
    arg = sp.constant(0)
    for i, (v, name, factor) in enumerate(potential.terms):
        e = [0] * (nv + 1)
        e[i] = 1
        e[nv] = v
        arg = arg + sp.monomial(e, -N * factor / v)
    ex = arg.exp()
    out = potential.space(order)
    acc: dict = {}
    for e, c in ex.terms.items():
        p = e[nv]
        if p % 2:
            continue
        key = e[:nv]
        acc[key] = acc.get(key, 0) + c * Fraction(double_factorial(p - 1), N ** (p // 2))
    res = out._like({k: c for k, c in acc.items() if c})
    return res.log()


def finite_n_free_energy(potential: EvenPotential, N: int, order: int) -> Series:
    """``log(Z_N(V)/Z_N(V_0))`` from the recursion coefficients ``r_i``."""
    F = _gaussian_h0_log(potential, N, order).scale(N)
    rs = string_equation_finite_N(potential, N, N - 1, order)
    for i, ri in enumerate(rs, start=1):
        F = F + ri.scale(Fraction(N, i)).log().scale(N - i)
    return F


def wick_vertices(potential: EvenPotential):
    """The same model as Wick vertices ``N w Tr M^{2i}`` with ``w = -factor/(2i)``."""
    from .wick import Vertex

    return [Vertex((1,) * v, -factor / v, name) for v, name, factor in potential.terms]


# ---------------------------------------------------------------------------
# planar limit


def _phi(potential: EvenPotential, order: int) -> Series:
    """``phi = r(z)/z`` as a series in ``u_{2i} = g_{2i} z^{i-1}``.

    From ``z = r + sum C(2i-1, i) g_{2i} r^i``:
    ``phi = 1 - sum C(2i-1, i) u_{2i} phi^i``.
    """
    gs = potential.couplings(order)
    space = potential.space(order)
    phi = space.constant(1)
    for _ in range(order):
        new = space.constant(1)
        for v, g in gs:
            i = v // 2
            new = new - (g * phi**i).scale(comb(2 * i - 1, i))
        phi = new
    return phi


def planar_r_series(potential: EvenPotential, order: int) -> Series:
    """``r(z)`` with ``z`` carried as a weight-zero variable."""
    phi = _phi(potential, order)
    names = potential.names + ("z",)
    sp = Series(names, [1] * len(potential.terms) + [0], order)
    terms = {}
    for e, c in phi.terms.items():
        terms[e + (1 + potential.degree_shift(e),)] = c
    return sp._like(terms)


def evaluate_z(potential: EvenPotential, r_series: Series, z) -> Series:
    """Substitute a number for ``z`` in a series from :func:`planar_r_series`."""
    z = Fraction(z)
    acc: dict = {}
    for e, c in r_series.terms.items():
        key = e[:-1]
        acc[key] = acc.get(key, 0) + c * z ** e[-1]
    return potential.space(r_series.order)._like({k: c for k, c in acc.items() if c})


def planar_free_energy(potential: EvenPotential, order: int) -> Series:
    """``f_0 = int_0^1 (1 - z) log(r(z)/z) dz``."""
    logphi = _phi(potential, order).log()
    # int_0^1 (1 - z) z^D dz = 1/((D+1)(D+2))
    return logphi.map_coefficients(
        lambda e, c: c / ((potential.degree_shift(e) + 1) * (potential.degree_shift(e) + 2))
    )


def planar_moments(potential: EvenPotential, n: int, order: int) -> Series:
    """Planar ``<(1/N) Tr M^n>``: ``C(2p, p) int_0^1 r(z)^p dz`` for ``n = 2p``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    space = potential.space(order)
    if n % 2:
        return space.constant(0)
    p = n // 2
    if p == 0:
        return space.constant(1)
    phip = _phi(potential, order) ** p
    b = comb(2 * p, p)
    return phip.map_coefficients(lambda e, c: c * Fraction(b, p + potential.degree_shift(e) + 1))


# ---------------------------------------------------------------------------
# quartic closed forms


def quartic_a2_series(order: int) -> TruncatedSeries:
    """``a^2 = (2/(3g)) (1 - sqrt(1 - 12 g))`` expanded in ``g``."""
    root = binomial_series(Fraction(1, 2), order + 1)
    # sqrt(1 - 12 g) coefficients
    coeffs = [root[k] * (-12) ** k for k in range(order + 2)]
    one_minus = TruncatedSeries([1 - coeffs[0]] + [-c for c in coeffs[1:]])
    return one_minus.divide_by_variable() * Fraction(2, 3)


def quartic_closed_f0(order: int) -> TruncatedSeries:
    """``f_0 = (1/2) log(a^2/4) + (a^2 - 4)(a^2 - 36)/384`` expanded in ``g``."""
    a2 = quartic_a2_series(order)
    return (a2 * Fraction(1, 4)).log() * Fraction(1, 2) + (a2 - 4) * (a2 - 36) * Fraction(1, 384)


def quartic_f0_coefficients(order: int) -> list[Fraction]:
    """``[f_{0,1}, ..., f_{0,order}]`` from the planar free energy."""
    f0 = planar_free_energy(EvenPotential.quartic(), order)
    return [f0.coefficient((n,)) for n in range(1, order + 1)]


@dataclass(frozen=True)
class QuarticCritical:
    g_c: Fraction
    exponent: Fraction
    coefficients: tuple[Fraction, ...]

    def ratios(self) -> list[float]:
        c = self.coefficients
        return [float(c[i + 1] / c[i]) for i in range(len(c) - 1)]


def quartic_critical(order: int = 30) -> QuarticCritical:
    """Critical coupling, singular exponent of ``f_0`` and its coefficients."""
    return QuarticCritical(
        Fraction(1, 12), Fraction(5, 2), tuple(quartic_f0_coefficients(order))
    )
