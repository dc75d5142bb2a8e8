"""Arch configurations: noncrossing perfect matchings of 2n bridges.

Bridges are numbered 0..2n-1 from left to right.  The canonical text form
of a configuration is its Dyck word, ``(`` for the left end of an arch and
``)`` for the right end.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

from .limits import DimensionError


def catalan(p: int) -> int:
    if p < 0:
        raise ValueError("catalan index must be nonnegative")
    return comb(2 * p, p) // (p + 1)


@dataclass(frozen=True)
class ArchConfig:
    match: tuple[int, ...]

    def __post_init__(self):
        m = self.match
        n2 = len(m)
        if n2 == 0 or n2 % 2:
            raise ValueError("an arch configuration has a positive even number of bridges")
        stack = []
        for i, j in enumerate(m):
            if not 0 <= j < n2 or j == i or m[j] != i:
                raise ValueError(f"match is not a fixed-point-free involution at {i}")
            if j > i:
                stack.append(i)
            else:
                if not stack or stack.pop() != j:
                    raise ValueError("arches cross")

    @property
    def order_2n(self) -> int:
        return len(self.match)

    @property
    def n(self) -> int:
        return len(self.match) // 2

    @classmethod
    def from_dyck(cls, word: str) -> ArchConfig:
        match = [0] * len(word)
        stack = []
        for i, ch in enumerate(word):
            if ch == "(":
                stack.append(i)
            elif ch == ")":
                if not stack:
                    raise ValueError(f"unbalanced Dyck word {word!r}")
                j = stack.pop()
                match[i], match[j] = j, i
            else:
                raise ValueError(f"bad Dyck character {ch!r}")
        if stack:
            raise ValueError(f"unbalanced Dyck word {word!r}")
        return cls(tuple(match))

    @classmethod
    def from_pairs(cls, pairs) -> ArchConfig:
        pairs = list(pairs)
        match = [0] * (2 * len(pairs))
        for i, j in pairs:
            match[i], match[j] = j, i
        return cls(tuple(match))

    def dyck(self) -> str:
        return "".join("(" if j > i else ")" for i, j in enumerate(self.match))

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.match) if i < j]

    def __str__(self) -> str:
        return self.dyck()


def enumerate_arches(n: int) -> Iterator[ArchConfig]:
    """All arch configurations of order 2n in lexicographic Dyck order."""
    if n < 1:
        raise ValueError("n must be positive")
    for word in dyck_words(n):
        yield ArchConfig.from_dyck(word)


def dyck_words(n: int) -> Iterator[str]:
    # "(" < ")" in ASCII, so extending with "(" first gives lexicographic order
    def rec(prefix: list[str], opened: int, closed: int):
        if closed == n:
            yield "".join(prefix)
            return
        if opened < n:
            prefix.append("(")
            yield from rec(prefix, opened + 1, closed)
            prefix.pop()
        if closed < opened:
            prefix.append(")")
            yield from rec(prefix, opened, closed + 1)
            prefix.pop()

    yield from rec([], 0, 0)


def rainbow(n: int) -> ArchConfig:
    if n < 1:
        raise ValueError("n must be positive")
    return ArchConfig(tuple(2 * n - 1 - i for i in range(2 * n)))


def count_cycles(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Closed loops formed by alternating the involutions ``a`` and ``b``."""
    seen = bytearray(len(a))
    loops = 0
    for start in range(len(a)):
        if seen[start]:
            continue
        loops += 1
        i = start
        while True:
            seen[i] = 1
            j = a[i]
            seen[j] = 1
            i = b[j]
            if i == start:
                break
    return loops


def glue_components(a: ArchConfig, b: ArchConfig) -> int:
    """Number of closed loops with ``a`` above the river and ``b`` reflected below."""
    if a.order_2n != b.order_2n:
        raise DimensionError(
            f"cannot glue orders {a.order_2n} and {b.order_2n}"
        )
    return count_cycles(a.match, b.match)


def winding(a: ArchConfig) -> int:
    """Number of arches passing over the centre of the river (between n-1 and n)."""
    n = a.n
    return sum(1 for i, j in enumerate(a.match) if i < n <= j)
