"""Finite-N Gaussian matrix averages by explicit Wick pairing.

A ``StarSystem`` is a product of traces, each trace a word in matrix labels.
Every half-edge of a star is paired with another one; a pairing of labels
``a`` and ``b`` carries the propagator weight ``P[a][b]`` (times ``1/N``) and
every face of the resulting fatgraph gives a factor ``N``.  Averages come
out as exact Laurent polynomials in ``N``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .limits import check_work
from .polys import LaurentPolynomial
from .series import Series, double_factorial


def laurent_n(coeffs=None) -> LaurentPolynomial:
    return LaurentPolynomial(coeffs, "N")


@dataclass(frozen=True)
class StarSystem:
    stars: tuple[tuple[int, ...], ...]

    def __init__(self, stars):
        object.__setattr__(self, "stars", tuple(tuple(int(x) for x in s) for s in stars))

    @property
    def half_edges(self) -> int:
        return sum(len(s) for s in self.stars)

    def labels(self) -> list[int]:
        return [x for s in self.stars for x in s]

    def successor(self) -> list[int]:
        """Next half-edge around the same vertex (cyclic, clockwise)."""
        succ = []
        base = 0
        for s in self.stars:
            L = len(s)
            succ.extend(base + (i + 1) % L for i in range(L))
            base += L
        return succ

    def star_of(self) -> list[int]:
        return [v for v, s in enumerate(self.stars) for _ in s]


@dataclass(frozen=True)
class PropagatorTable:
    """Symmetric table of pair weights ``P[a][b]``, labels numbered from 1."""

    weights: tuple[tuple[Fraction, ...], ...] = field(default=((Fraction(1),),))

    def __init__(self, weights=((1,),)):
        rows = tuple(tuple(Fraction(x) for x in row) for row in weights)
        k = len(rows)
        if any(len(r) != k for r in rows):
            raise ValueError("propagator table must be square")
        for a in range(k):
            for b in range(a):
                if rows[a][b] != rows[b][a]:
                    raise ValueError("propagator table must be symmetric")
        object.__setattr__(self, "weights", rows)

    @property
    def size(self) -> int:
        return len(self.weights)

    def __call__(self, a: int, b: int) -> Fraction:
        return self.weights[a - 1][b - 1]

    @classmethod
    def identity(cls, k: int) -> PropagatorTable:
        return cls([[1 if a == b else 0 for b in range(k)] for a in range(k)])

    @classmethod
    def potts(cls, q: int, boltzmann) -> PropagatorTable:
        """Extra weight ``boltzmann`` (= e^K) on equal-spin edges."""
        e = Fraction(boltzmann)
        return cls([[e if a == b else 1 for b in range(q)] for a in range(q)])

    @classmethod
    def o_n(cls, n: int, loop_fugacity) -> PropagatorTable:
        """Label 1 is the empty-edge matrix B, labels 2..n+1 the loop colours."""
        K = Fraction(loop_fugacity)
        rows = [[0] * (n + 1) for _ in range(n + 1)]
        rows[0][0] = 1
        for c in range(1, n + 1):
            rows[c][c] = K
        return cls(rows)

    @classmethod
    def alternating(cls) -> PropagatorTable:
        """Two colours that may only be paired with each other."""
        return cls([[0, 1], [1, 0]])


def iter_pairings(
    labels: Sequence[int], propagator: PropagatorTable | None = None
) -> Iterator[tuple[list[int], Fraction]]:
    """Yield ``(partner, weight)`` for every pairing with nonzero weight.

    The lowest unpaired half-edge is always paired first, so each pairing is
    produced exactly once.  ``partner`` is reused between yields; copy it if
    it must be kept.
    """
    H = len(labels)
    partner = [-1] * H
    if H % 2:
        return
    one = Fraction(1)

    def rec(weight: Fraction):
        try:
            i = partner.index(-1)
        except ValueError:
            yield partner, weight
            return
        for j in range(i + 1, H):
            if partner[j] != -1:
                continue
            w = one if propagator is None else propagator(labels[i], labels[j])
            if not w:
                continue
            partner[i], partner[j] = j, i
            yield from rec(weight * w)
            partner[i] = partner[j] = -1

    yield from rec(one)


def count_faces(partner: Sequence[int], succ: Sequence[int]) -> int:
    """Cycles of the face permutation: pair a half-edge, then step around its vertex."""
    H = len(partner)
    seen = bytearray(H)
    faces = 0
    for h in range(H):
        if seen[h]:
            continue
        faces += 1
        while not seen[h]:
            seen[h] = 1
            h = succ[partner[h]]
    return faces


def faces_and_genus(system: StarSystem, pairing) -> tuple[int, list[int]]:
    """Face count and the genus of each connected component.

    ``pairing`` is either a partner list or an iterable of index pairs.
    Components are listed in order of their lowest star index.
    """
    H = system.half_edges
    partner = _as_partner(pairing, H)
    succ = system.successor()
    star = system.star_of()
    V = len(system.stars)

    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for h in range(H):
        a, b = find(star[h]), find(star[partner[h]])
        if a != b:
            parent[max(a, b)] = min(a, b)

    comp_v: dict[int, int] = {}
    comp_e: dict[int, int] = {}
    comp_f: dict[int, int] = {}
    for v in range(V):
        r = find(v)
        comp_v[r] = comp_v.get(r, 0) + 1
        comp_e[r] = comp_e.get(r, 0) + len(system.stars[v])
    seen = bytearray(H)
    F = 0
    for h in range(H):
        if seen[h]:
            continue
        F += 1
        r = find(star[h])
        comp_f[r] = comp_f.get(r, 0) + 1
        while not seen[h]:
            seen[h] = 1
            h = succ[partner[h]]
    genera = []
    for r in sorted(comp_v):
        chi = comp_v[r] - comp_e[r] // 2 + comp_f[r]
        genera.append((2 - chi) // 2)
    return F, genera


def _as_partner(pairing, H: int) -> list[int]:
    items = list(pairing)
    if items and isinstance(items[0], int):
        partner = [int(x) for x in items]
    else:
        partner = [-1] * H
        for i, j in items:
            if partner[i] != -1 or partner[j] != -1:
                raise ValueError("half-edge used twice in pairing")
            partner[i], partner[j] = j, i
    if len(partner) != H:
        raise ValueError("pairing does not cover every half-edge")
    for h, p in enumerate(partner):
        if not 0 <= p < H or p == h or partner[p] != h:
            raise ValueError("pairing is not a fixed-point-free involution")
    return partner


def gaussian_average(
    system: StarSystem | Sequence[Sequence[int]],
    propagator: PropagatorTable | None = None,
    max_work: int | None = None,
) -> LaurentPolynomial:
    """``<prod Tr(word)>`` as a Laurent polynomial in ``N``.

    Each pairing contributes ``prod P * N^(F - E)``; the empty system is 1.
    """
    if not isinstance(system, StarSystem):
        system = StarSystem(system)
    H = system.half_edges
    if H % 2:
        return laurent_n()
    check_work(double_factorial(H - 1), max_work, f"Wick sum over {H} half-edges")
    succ = system.successor()
    E = H // 2
    acc: dict[int, Fraction] = {}
    for partner, weight in iter_pairings(system.labels(), propagator):
        F = count_faces(partner, succ)
        acc[F - E] = acc.get(F - E, 0) + weight
    return laurent_n(acc)


def genus_distribution(p: int) -> dict[int, int]:
    """Number of pairings of one 2p-valent star by genus."""
    system = StarSystem([[1] * (2 * p)])
    succ = system.successor()
    out: dict[int, int] = {}
    for partner, _ in iter_pairings(system.labels()):
        F = count_faces(partner, succ)
        h = (1 + p - F) // 2
        out[h] = out.get(h, 0) + 1
    return dict(sorted(out.items()))


@dataclass(frozen=True)
class Vertex:
    """A term ``N * weight * coupling * Tr(word)`` in the exponent."""

    word: tuple[int, ...]
    weight: Fraction
    name: str

    def __init__(self, word, weight=None, name=None):
        word = tuple(int(x) for x in word)
        object.__setattr__(self, "word", word)
        object.__setattr__(
            self, "weight", Fraction(1, len(word)) if weight is None else Fraction(weight)
        )
        object.__setattr__(self, "name", name or "g" + "".join(map(str, word)))


def one_matrix_vertices(vertex_weights: Mapping[int, object]) -> list[Vertex]:
    """Vertices ``N g_i Tr(M^i)/i`` scaled by the given multipliers."""
    out = []
    for valency in sorted(vertex_weights):
        c = Fraction(vertex_weights[valency])
        out.append(Vertex((1,) * valency, c / valency, f"g{valency}"))
    return out


def _multiplicities(weights: Sequence[int], budget: int, cap: int | None):
    def rec(i, left, count):
        if i == len(weights):
            yield ()
            return
        w = weights[i]
        k = 0
        while k * w <= left and (cap is None or count + k <= cap):
            for rest in rec(i + 1, left - k * w, count + k):
                yield (k,) + rest
            k += 1

    yield from rec(0, budget, 0)


def partition_function(
    vertices: Sequence[Vertex] | Mapping[int, object],
    propagator: PropagatorTable | None = None,
    order: int = 1,
    truncate_by: str = "vertices",
    max_work: int | None = None,
) -> Series:
    """Formal ``<exp(N sum_v weight_v g_v Tr(word_v))>`` as a series in the ``g_v``.

    Coefficients are Laurent polynomials in ``N``.  ``truncate_by`` chooses
    whether ``order`` bounds the number of vertices or of half-edges.
    """
    if isinstance(vertices, Mapping):
        vertices = one_matrix_vertices(vertices)
    vertices = list(vertices)
    if truncate_by == "vertices":
        weights = [1] * len(vertices)
    elif truncate_by == "half_edges":
        weights = [len(v.word) for v in vertices]
    else:
        raise ValueError("truncate_by must be 'vertices' or 'half_edges'")
    zero = laurent_n()
    terms = {}
    N = laurent_n({1: 1})
    for mult in _multiplicities(weights, order, None):
        stars = []
        for v, k in zip(vertices, mult):
            stars.extend([v.word] * k)
        H = sum(len(s) for s in stars)
        if H % 2:
            continue
        avg = gaussian_average(StarSystem(stars), propagator, max_work)
        if not avg:
            continue
        pref = Fraction(1)
        nv = 0
        for v, k in zip(vertices, mult):
            pref *= v.weight**k / _fact(k)
            nv += k
        terms[mult] = avg * pref * (N**nv)
    return Series([v.name for v in vertices], weights, order, terms, zero=zero)


def connected_free_energy(
    vertex_weights: Sequence[Vertex] | Mapping[int, object],
    propagator: PropagatorTable | None = None,
    order: int = 1,
    truncate_by: str = "vertices",
    max_work: int | None = None,
) -> Series:
    """Logarithm of :func:`partition_function`: connected fatgraphs only.

    The coefficient of ``prod g_v^{n_v}`` is ``sum N^(2-2h)/|Aut|`` over
    connected fatgraphs with those vertices.
    """
    return partition_function(
        vertex_weights, propagator, order, truncate_by, max_work
    ).log()


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def word_pair_average(word: Sequence[int], propagator=None) -> LaurentPolynomial:
    """``<Tr(w) Tr(reverse w)>`` including pairings across the two traces."""
    w = tuple(word)
    return gaussian_average(StarSystem([w, w[::-1]]), propagator)


def genus_semimeander_series(n: int, q: int, max_work: int | None = None) -> LaurentPolynomial:
    """``sum_words <(1/N) Tr(a_1..a_n a_n..a_1)>`` over ``q`` colours.

    The coefficient of ``N^(-2g)`` is the genus-g semi-meander polynomial at ``q``.
    """
    check_work(q**n * double_factorial(2 * n - 1), max_work, "genus semi-meander sum")
    prop = PropagatorTable.identity(q)
    total = laurent_n()
    for letters in itertools.product(range(1, q + 1), repeat=n):
        total = total + gaussian_average(StarSystem([letters + letters[::-1]]), prop)
    return total / laurent_n({1: 1})
