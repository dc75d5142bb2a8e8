"""Meander and semi-meander polynomials.

``m_{2n}(q) = sum_{a,b} q^{c(a,b)}`` over pairs of arch configurations and
``mbar_n(q) = sum_a q^{c(a, rainbow)}``.  The semi-meander table is built by
a depth-first walk of the tree in which every semi-meander of order n+1 has
a unique parent of order n:

* (I)  for each external arch (i, j), pass a new leftmost bridge under it,
  joining the new bridge 0 to i+1 and j+1 to the new rightmost bridge;
  the component count is unchanged;
* (II) add one large arch around everything; this closes a new loop.

Configurations are held as forests of arches, ``(size, children)`` with
``size`` the number of arches in the subtree, so both moves are cheap
tuple surgery.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .arches import ArchConfig, catalan, count_cycles, enumerate_arches, rainbow
from .limits import ResourceLimitError, check_work, default_max_work
from .series import double_factorial


class ComponentPolynomial(dict):
    """Map ``k -> count``: configurations with k connected components."""

    def __call__(self, q):
        return sum(c * q**k for k, c in self.items())

    def total(self) -> int:
        return sum(self.values())

    def coefficient(self, k: int) -> int:
        return self.get(k, 0)

    def sorted_items(self) -> list[tuple[int, int]]:
        return sorted(self.items())

    def __str__(self) -> str:
        if not self:
            return "0"
        terms = []
        for k, c in sorted(self.items(), reverse=True):
            mono = "q" if k == 1 else f"q^{k}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


def _poly(counts: dict[int, int]) -> ComponentPolynomial:
    return ComponentPolynomial(sorted((k, c) for k, c in counts.items() if c))


def meander_polynomial(n: int, max_work: int | None = None) -> ComponentPolynomial:
    if n < 1:
        raise ValueError("n must be positive")
    cn = catalan(n)
    check_work(cn * cn, max_work, f"meander polynomial of order {2 * n}")
    matches = [a.match for a in enumerate_arches(n)]
    counts: dict[int, int] = {}
    # c(a,b) = c(b,a): count the diagonal once and each off-diagonal pair twice
    for i, a in enumerate(matches):
        k = count_cycles(a, a)
        counts[k] = counts.get(k, 0) + 1
        for b in matches[i + 1 :]:
            k = count_cycles(a, b)
            counts[k] = counts.get(k, 0) + 2
    return _poly(counts)


def semimeander_polynomial(n: int, max_work: int | None = None) -> ComponentPolynomial:
    if n < 1:
        raise ValueError("n must be positive")
    check_work(catalan(n), max_work, f"semi-meander polynomial of order {n}")
    r = rainbow(n).match
    counts: dict[int, int] = {}
    for a in enumerate_arches(n):
        k = count_cycles(a.match, r)
        counts[k] = counts.get(k, 0) + 1
    return _poly(counts)


# ---------------------------------------------------------------------------
# semi-meander tree

Forest = tuple  # tuple of (size, children) nodes


def forest_to_arch(roots: Forest) -> ArchConfig:
    """Expand a forest of arches into an explicit matching."""
    match: list[int] = []

    def emit(node, base):
        size, children = node
        pos = base + 1
        match.append(base + 2 * size - 1)
        for child in children:
            pos = emit(child, pos)
        end = base + 2 * size - 1
        match.append(base)
        assert pos == end
        return end + 1

    pos = 0
    for node in roots:
        pos = emit(node, pos)
    return ArchConfig(tuple(match))


def _roots_size(roots) -> int:
    return sum(node[0] for node in roots)


def _children(roots: Forest, n: int):
    """Children of a node: ``(roots', dk, covers)`` for each move.

    ``covers`` tells whether the external arch used by move (I) spans the
    centre of the parent; ``None`` marks move (II).
    """
    out = []
    pos = 0
    for s, (size, kids) in enumerate(roots):
        end = pos + 2 * size - 1
        covers = pos <= n - 1 and end >= n
        left = roots[:s]
        right = roots[s + 1 :]
        new = ((1 + _roots_size(left), left),) + kids + ((1 + _roots_size(right), right),)
        out.append((new, 0, covers))
        pos = end + 1
    out.append((((n + 1, roots),), 1, None))
    return out


def _child_winding(w: int, covers) -> int:
    if covers is None or not covers:
        return w + 1
    return w - 1


def iter_semimeander_tree(n_max: int) -> Iterator[tuple[Forest, int, int, int]]:
    """Every node ``(roots, n, k, w)`` of the tree down to order ``n_max``.

    ``k`` and ``w`` are carried incrementally; this slow walk exists so the
    bookkeeping can be checked against direct recomputation.
    """
    def rec(roots, n, k, w):
        yield roots, n, k, w
        if n == n_max:
            return
        for new, dk, covers in _children(roots, n):
            yield from rec(new, n + 1, k + dk, _child_winding(w, covers))

    if n_max >= 1:
        yield from rec(((1, ()),), 1, 1, 1)


def _leaf_counts(acc, n, k, w, r):
    """Record the children of a node with ``r`` roots at order ``n``."""
    cov = 1 if w >= 1 else 0
    key = (n, k + 1, w + 1)
    acc[key] = acc.get(key, 0) + 1
    if r - cov:
        key = (n, k, w + 1)
        acc[key] = acc.get(key, 0) + r - cov
    if cov:
        key = (n, k, w - 1)
        acc[key] = acc.get(key, 0) + 1


def _walk(roots, n, k, w, n_max, acc) -> None:
    """Accumulate counts of the subtree below ``(roots, n, k, w)``, excluding itself."""
    if n + 1 == n_max:
        _leaf_counts(acc, n_max, k, w, len(roots))
        return
    if n + 2 == n_max:
        # two levels at once: only the number of roots of each child matters
        pos = 0
        for size, kids in roots:
            end = pos + 2 * size - 1
            covers = pos <= n - 1 and end >= n
            w1 = w - 1 if covers else w + 1
            key = (n + 1, k, w1)
            acc[key] = acc.get(key, 0) + 1
            _leaf_counts(acc, n_max, k, w1, 2 + len(kids))
            pos = end + 1
        key = (n + 1, k + 1, w + 1)
        acc[key] = acc.get(key, 0) + 1
        _leaf_counts(acc, n_max, k + 1, w + 1, 1)
        return
    for new, dk, covers in _children(roots, n):
        k1 = k + dk
        w1 = _child_winding(w, covers)
        key = (n + 1, k1, w1)
        acc[key] = acc.get(key, 0) + 1
        _walk(new, n + 1, k1, w1, n_max, acc)


def _walk_shard(args):
    nodes, n_max = args
    acc: dict = {}
    for roots, n, k, w in nodes:
        _walk(roots, n, k, w, n_max, acc)
    return acc


@dataclass
class SemiMeanderTable:
    """Counts of semi-meanders by order ``n``, components ``k`` and winding ``w``."""

    n_max: int
    counts: dict = field(default_factory=dict)

    def rows(self) -> list[tuple[int, int, int, int]]:
        return [(n, k, w, c) for (n, k, w), c in sorted(self.counts.items())]

    def polynomial(self, n: int) -> ComponentPolynomial:
        out: dict[int, int] = {}
        for (m, k, _w), c in self.counts.items():
            if m == n:
                out[k] = out.get(k, 0) + c
        return _poly(out)

    def one_component(self, n: int) -> int:
        return self.polynomial(n).coefficient(1)

    def winding_distribution(self, n: int, k: int | None = None) -> dict[int, int]:
        out: dict[int, int] = {}
        for (m, kk, w), c in self.counts.items():
            if m == n and (k is None or kk == k):
                out[w] = out.get(w, 0) + c
        return dict(sorted(out.items()))

    def total(self, n: int) -> int:
        return sum(c for (m, _k, _w), c in self.counts.items() if m == n)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "k", "w", "count"])
        for row in self.rows():
            writer.writerow([str(x) for x in row])
        return buf.getvalue()


def table_work(n_max: int) -> int:
    """Tree nodes visited for a table up to ``n_max``."""
    return sum(catalan(d) for d in range(1, n_max + 1))


def semimeander_table(
    n_max: int,
    max_work: int | None = None,
    threads: int = 1,
    shard_depth: int | None = None,
) -> SemiMeanderTable:
    """Table of ``M̄_n^{(k)}`` resolved by winding, for ``1 <= n <= n_max``.

    If the node count exceeds the work limit the largest feasible table is
    computed and attached to the raised :class:`ResourceLimitError`.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    limit = default_max_work() if max_work is None else max_work
    work = table_work(n_max)
    if work > limit:
        feasible = 0
        while feasible < n_max and table_work(feasible + 1) <= limit:
            feasible += 1
        partial = _build_table(feasible, threads, shard_depth) if feasible else None
        raise ResourceLimitError(
            f"semi-meander table to order {n_max} needs {work} nodes, limit {limit}",
            work,
            limit,
            partial,
        )
    return _build_table(n_max, threads, shard_depth)


def _build_table(n_max: int, threads: int, shard_depth: int | None) -> SemiMeanderTable:
    table = SemiMeanderTable(n_max)
    acc = table.counts
    acc[(1, 1, 1)] = 1
    if n_max == 1:
        return table
    depth = shard_depth if shard_depth is not None else min(n_max - 1, 8)
    depth = max(1, min(depth, n_max - 1))
    # breadth-first down to the shard depth, counting every node on the way
    frontier = [(((1, ()),), 1, 1, 1)]
    for n in range(1, depth):
        nxt = []
        for roots, _, k, w in frontier:
            for new, dk, covers in _children(roots, n):
                k1 = k + dk
                w1 = _child_winding(w, covers)
                key = (n + 1, k1, w1)
                acc[key] = acc.get(key, 0) + 1
                nxt.append((new, n + 1, k1, w1))
        frontier = nxt
    if threads <= 1 or len(frontier) < 2:
        parts = [_walk_shard((frontier, n_max))]
    else:
        chunks = [frontier[i::threads * 4] for i in range(threads * 4)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_walk_shard, [(c, n_max) for c in chunks if c]))
    for part in parts:
        for key, c in part.items():
            acc[key] = acc.get(key, 0) + c
    table.counts = dict(sorted(acc.items()))
    return table


# ---------------------------------------------------------------------------
# higher genus


def iter_all_pairings(m: int) -> Iterator[tuple[int, ...]]:
    """All perfect matchings of ``0..m-1`` as involution tuples."""
    partner = [-1] * m

    def rec():
        try:
            i = partner.index(-1)
        except ValueError:
            yield tuple(partner)
            return
        for j in range(i + 1, m):
            if partner[j] == -1:
                partner[i], partner[j] = j, i
                yield from rec()
                partner[i] = partner[j] = -1

    if m % 2 == 0:
        yield from rec()


def pairing_genus(match) -> int:
    """Genus of the one-vertex map obtained by closing the points into a star."""
    from .wick import count_faces

    m = len(match)
    succ = [(i + 1) % m for i in range(m)]
    faces = count_faces(match, succ)
    return (1 + m // 2 - faces) // 2


def genus_meander_polynomials(n: int, max_work: int | None = None) -> dict[int, ComponentPolynomial]:
    """``g -> m^{(g)}`` for 2n bridges, over all (possibly crossing) road pairings.

    The genus of a diagram is the sum of the genera of the upper and lower
    pairings, each closed into a single star.
    """
    if n < 1:
        raise ValueError("n must be positive")
    df = double_factorial(2 * n - 1)
    check_work(df * df, max_work, f"genus meanders with {2 * n} bridges")
    by_genus: dict[int, list] = {}
    for p in iter_all_pairings(2 * n):
        by_genus.setdefault(pairing_genus(p), []).append(p)
    counts: dict[int, dict[int, int]] = {}
    for (h1, ups), (h2, downs) in itertools.product(by_genus.items(), repeat=2):
        bucket = counts.setdefault(h1 + h2, {})
        for a in ups:
            for b in downs:
                k = count_cycles(a, b)
                bucket[k] = bucket.get(k, 0) + 1
    return {g: _poly(c) for g, c in sorted(counts.items())}


def genus_meander_polynomial(n: int, g: int, max_work: int | None = None) -> ComponentPolynomial:
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return genus_meander_polynomials(n, max_work).get(g, ComponentPolynomial())
