"""Shared reference data and slow-but-obvious oracles."""

from __future__ import annotations

import itertools

# one-component semi-meander numbers, n = 1..29
TABLE_I_ONE = [
    1, 1, 2, 4, 10, 24, 66, 174, 504, 1406, 4210, 12198, 37378, 111278, 346846,
    1053874, 3328188, 10274466, 32786630, 102511418, 329903058, 1042277722,
    3377919260, 10765024432, 35095839848, 112670468128, 369192702554,
    1192724674590, 3925446804750,
]

# closed meanders of order 2n with one component, n = 1..8
MEANDER_ONE = [1, 2, 8, 42, 262, 1828, 13820, 110954]


def all_matchings(points):
    """Every perfect matching of ``points`` as a list of pairs."""
    points = list(points)
    if not points:
        yield []
        return
    a = points[0]
    for idx in range(1, len(points)):
        b = points[idx]
        rest = points[1:idx] + points[idx + 1 :]
        for m in all_matchings(rest):
            yield [(a, b)] + m


def crosses(p, r):
    (a, b), (c, d) = sorted(p), sorted(r)
    return a < c < b < d or c < a < d < b


def noncrossing_matchings(n):
    """Noncrossing matchings of 2n points found by filtering all matchings."""
    out = []
    for m in all_matchings(range(2 * n)):
        if not any(crosses(p, r) for p, r in itertools.combinations(m, 2)):
            match = [0] * (2 * n)
            for i, j in m:
                match[i], match[j] = j, i
            out.append(tuple(match))
    return out


def loops_by_union_find(a, b):
    """Connected components of the graph whose edges are the pairs of a and of b."""
    parent = list(range(len(a)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for m in (a, b):
        for i, j in enumerate(m):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return len({find(i) for i in range(len(a))})


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
