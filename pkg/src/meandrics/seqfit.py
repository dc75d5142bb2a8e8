"""Growth-rate and exponent estimates for positive integer sequences.

The model is ``s_n ~ A mu^n n^(-alpha)``.  With ``r_n = log(s_{n+1}/s_n)``,
two consecutive ratios fix ``log mu`` and ``alpha`` exactly for the pure
model; corrections ``O(1/n)`` to the prefactor leave ``alpha_n`` with an
``O(1/n)`` error and ``log mu_n`` with ``O(1/n^2)``, which Richardson
extrapolation removes.  ``stride = 2`` is for sequences that grow like
``R^(2n)``, so that ``R = mu^(1/2)``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence


@dataclass
class FitResult:
    R_estimate: float
    alpha_estimate: float
    window: tuple[int, int]
    deltas_R: list[float] = field(default_factory=list)
    deltas_alpha: list[float] = field(default_factory=list)
    R_sequence: list[float] = field(default_factory=list)
    alpha_sequence: list[float] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def _log(x) -> float:
    if isinstance(x, int):
        # exact integers can exceed the float range
        bits = x.bit_length()
        if bits > 1000:
            shift = bits - 53
            return math.log(x >> shift) + shift * math.log(2)
        return math.log(x)
    if isinstance(x, Fraction):
        return _log(x.numerator) - _log(x.denominator)
    return math.log(x)


def _log_ratio(b, a) -> float:
    """``log(b/a)``, from the exact ratio when both terms are exact."""
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        q = Fraction(b) / Fraction(a)
        try:
            return math.log(q.numerator / q.denominator)
        except OverflowError:
            return _log(q)
    return math.log(b / a)


def _richardson(ns: list[int], vals: list[float], p: int) -> tuple[list[int], list[float]]:
    out_n, out_v = [], []
    for i in range(1, len(vals)):
        a, b = ns[i - 1] ** p, ns[i] ** p
        out_n.append(ns[i])
        out_v.append((b * vals[i] - a * vals[i - 1]) / (b - a))
    return out_n, out_v


def fit_power_law(
    seq: Sequence,
    stride: int = 1,
    start: int = 1,
    richardson: int = 1,
) -> FitResult:
    """Estimate ``R`` and ``alpha`` from ``seq[i] = s_{start + i}``.

    ``richardson`` is the number of extrapolation passes (0 for raw
    estimates).  The returned ``deltas_*`` are successive differences of
    the final estimate sequences, as a convergence diagnostic.
    """
    if stride not in (1, 2):
        raise ValueError("stride must be 1 or 2")
    if start < 1:
        raise ValueError("sequence index must start at 1 or later")
    vals = list(seq)
    if len(vals) < 6:
        raise ValueError("need at least 6 terms")
    if any(v <= 0 for v in vals):
        raise ValueError("terms must be positive")
    r = [_log_ratio(vals[i + 1], vals[i]) for i in range(len(vals) - 1)]
    ns, L, A = [], [], []
    for i in range(1, len(r)):
        n = start + i
        d1 = math.log((n + 1) / n)
        d0 = math.log(n / (n - 1))
        a = (r[i] - r[i - 1]) / (d0 - d1)
        ns.append(n)
        A.append(a)
        L.append(r[i] + a * d1)
    nL, nA = list(ns), list(ns)
    for level in range(richardson):
        if len(L) < 2:
            break
        nL, L = _richardson(nL, L, level + 2)
        nA, A = _richardson(nA, A, level + 1)
    R_seq = [math.exp(x / stride) for x in L]
    return FitResult(
        R_estimate=R_seq[-1],
        alpha_estimate=A[-1],
        window=(start, start + len(vals) - 1),
        deltas_R=[R_seq[i + 1] - R_seq[i] for i in range(len(R_seq) - 1)],
        deltas_alpha=[A[i + 1] - A[i] for i in range(len(A) - 1)],
        R_sequence=R_seq,
        alpha_sequence=list(A),
    )


def even_subsequence(seq: Sequence, start: int = 1) -> tuple[list, int]:
    """Terms with even index, and the index ``j`` of the first one (``s_{2j}``)."""
    first = start if start % 2 == 0 else start + 1
    return list(seq[first - start :: 2]), first // 2


R_LARGE_Q = [
    Fraction(1),
    Fraction(1),
    Fraction(3, 2),
    Fraction(-3, 2),
    Fraction(-29, 8),
    Fraction(-81, 8),
    Fraction(-89, 16),
]

RBAR_LARGE_Q = [1, 1, 2, 2, 2, 0, -4, -8, -12, -10, -4, 12, 46, 98, 154, 124, 10, -102, 20, -64]


def large_q_reference(q: float) -> dict:
    """Truncated large-``q`` expansions of the meander and semi-meander radii.

    ``R(q) = 2 sqrt(q) sum_k c_k q^-k`` and ``Rbar(q) = q sum_k d_k q^-k``.
    """
    if q <= 0:
        raise ValueError("q must be positive")
    q = float(q)
    R = 2 * math.sqrt(q) * sum(float(c) * q**-k for k, c in enumerate(R_LARGE_Q))
    Rbar = q * sum(d * q**-k for k, d in enumerate(RBAR_LARGE_Q))
    return {"q": q, "R_series": R, "Rbar_series": Rbar}


def read_sequence_csv(text: str) -> list[int]:
    """Values from CSV text with a ``value`` column (or a single column)."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return []
    header = [h.strip() for h in rows[0]]
    if "value" in header:
        idx = header.index("value")
        body = rows[1:]
    else:
        idx = len(header) - 1
        body = rows[1:] if not _is_number(header[idx]) else rows
    return [int(row[idx]) for row in body if row]


def _is_number(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def write_sequence_csv(seq: Sequence, start: int = 1) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "value"])
    for i, v in enumerate(seq):
        w.writerow([start + i, str(v)])
    return buf.getvalue()
