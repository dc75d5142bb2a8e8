"""Configuration exponents of meanders from the KPZ relation.

Loop weights are parametrized as ``p = 2 cos(pi e)``, ``q = 2 cos(pi f)``
with ``e, f`` in ``[0, 1/2]``.  The two-flavour fully packed loop theory has
``c(q, p) = 2 - 6 (e^2/(1-e) + f^2/(1-f))``; coupling it to gravity gives

* ``alpha = 2 + sqrt(1-c) (sqrt(25-c) + sqrt(1-c)) / 12`` for meanders,
* ``alpha_bar = alpha - 1 + 2 Delta_1`` for semi-meanders, where ``Delta_1``
  is the dressed dimension of ``h_1 = (1-e)/16 - e^2/(4(1-e))``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .limits import DomainError

_CLAMP = 1e-12


def electric_charge(x: float) -> float:
    """``f`` in ``[0, 1/2]`` with ``x = 2 cos(pi f)``, for ``x`` in ``[0, 2]``."""
    x = float(x)
    if x < -_CLAMP or x > 2 + _CLAMP or math.isnan(x):
        raise DomainError(f"loop weight {x} outside [0, 2]")
    x = min(max(x, 0.0), 2.0)
    return math.acos(x / 2) / math.pi


def kpz_gamma(c: float) -> float:
    """String susceptibility ``(c - 1 - sqrt((25-c)(1-c)))/12``."""
    if c > 1 + _CLAMP:
        raise DomainError("KPZ relation needs c <= 1")
    c = min(c, 1.0)
    return (c - 1 - math.sqrt((25 - c) * (1 - c))) / 12


def dressed_dimension(h: float, c: float) -> float:
    """Gravitational dimension of a weight-``h`` operator at central charge ``c``."""
    if c > 1 + _CLAMP:
        raise DomainError("KPZ relation needs c <= 1")
    c = min(c, 1.0)
    disc = 1 - c + 24 * h
    if disc < -_CLAMP:
        raise DomainError("1 - c + 24 h must be nonnegative")
    disc = max(disc, 0.0)
    return (math.sqrt(disc) - math.sqrt(1 - c)) / (math.sqrt(25 - c) - math.sqrt(1 - c))


def central_charge(e: float, f: float) -> float:
    return 2 - 6 * (e * e / (1 - e) + f * f / (1 - f))


def dense_on_charge(x: float) -> float:
    """Dense O(n) central charge ``1 - 6 f^2/(1-f)`` at ``n = x = 2 cos(pi f)``."""
    f = electric_charge(x)
    return 1 - 6 * f * f / (1 - f)


def endpoint_weight(e: float) -> float:
    """Conformal weight ``h_1`` of the river-endpoint operator."""
    return (1 - e) / 16 - e * e / (4 * (1 - e))


def alpha_from_c(c: float) -> float:
    if c > 1 + _CLAMP:
        raise DomainError("exponent formula needs c <= 1")
    s = math.sqrt(max(1 - c, 0.0))
    return 2 + s * (math.sqrt(25 - c) + s) / 12


@dataclass(frozen=True)
class ExponentRecord:
    q: float
    p: float
    e: float
    f: float
    c: float
    gamma: float
    h_1: float
    delta_1: float
    alpha: float
    alpha_bar: float
    R_q1: float | None
    kpz_valid: bool = True

    def as_dict(self) -> dict:
        return asdict(self)


def exponent_point(q: float, p: float) -> ExponentRecord:
    """All exponents for ``q`` road loops and ``p`` rivers.

    Where ``c(q, p) > 1`` the KPZ quantities are undefined: ``gamma`` and
    ``Delta_1`` are NaN, ``kpz_valid`` is false and ``alpha`` uses
    ``sqrt(max(1 - c, 0))``, which gives 2 at the corner ``q = p = 2``.
    ``Delta_1`` and ``alpha_bar`` are also NaN when ``1 - c + 24 h_1 < 0``,
    which happens at ``p = 0`` for ``q > q_c``.
    """
    e = electric_charge(p)
    f = electric_charge(q)
    c = central_charge(e, f)
    h1 = endpoint_weight(e)
    R = multi_river(q)["R"] if abs(float(p) - 1) < 1e-12 else None
    s = math.sqrt(max(1 - c, 0.0))
    alpha = 2 + s * (math.sqrt(25 - c) + s) / 12
    if c > 1 + _CLAMP:
        nan = float("nan")
        return ExponentRecord(q, p, e, f, c, nan, h1, nan, alpha, nan, R, False)
    if 1 - c + 24 * h1 < -_CLAMP:
        # the endpoint operator has no real dressed dimension (winding phase)
        d1 = float("nan")
    else:
        d1 = dressed_dimension(h1, c)
    return ExponentRecord(q, p, e, f, c, kpz_gamma(c), h1, d1, alpha, alpha - 1 + 2 * d1, R, True)


def _sinc_sq_series(x: float) -> float:
    # (sin x / x)^2 = 1 - x^2/3 + 2 x^4/45 - ...
    x2 = x * x
    return 1 - x2 / 3 + 2 * x2 * x2 / 45


def multi_river(q: float) -> dict:
    """``R(q,1)``, ``alpha(q,1)``, critical cosmological constant and ``gamma``."""
    f = electric_charge(q)
    x = math.pi * f / 2
    if f < 1e-4:
        R = math.pi**2 / 2 * _sinc_sq_series(x)
    else:
        R = 2 * math.sin(x) ** 2 / (f * f)
    return {
        "q": float(q),
        "f": f,
        "R": R,
        "alpha": (2 - f) / (1 - f),
        "x": 1 / R,
        "gamma": -f / (1 - f),
    }


def winding_transition() -> float:
    """``q_c`` with ``c(q_c) = 3/4`` in the dense O(n) phase."""
    return 2 * math.cos(math.pi * (math.sqrt(97) - 1) / 48)


def alpha_p0(q: float) -> float:
    """Meander exponent at ``p = 0`` (one river of weight zero)."""
    return alpha_from_c(dense_on_charge(q) - 2)


def alpha_bar_p0(q: float) -> float:
    """Semi-meander exponent at ``p = 0``; singular at ``q = q_c``."""
    cq = dense_on_charge(q)
    c0 = cq - 2
    arg = 3 - 4 * cq
    if arg < -_CLAMP:
        raise DomainError("semi-meander exponent formula fails beyond q_c")
    return 1 + math.sqrt(max(arg, 0.0)) * (math.sqrt(25 - c0) + math.sqrt(1 - c0)) / 24


ALPHA_00 = 2 + math.sqrt(5) * (math.sqrt(5) + math.sqrt(29)) / 12
ALPHA_BAR_00 = 1 + math.sqrt(11) * (math.sqrt(5) + math.sqrt(29)) / 24


def multi_river_table() -> list[dict]:
    """Multi-river asymptotics at ``q = 0, 1, sqrt 2, sqrt 3, 2``."""
    rows = [
        (0.0, "0", "1/2", "4", "3"),
        (1.0, "1", "1/3", "9/2", "5/2"),
        (math.sqrt(2), "sqrt(2)", "1/4", "16-8*sqrt(2)", "7/3"),
        (math.sqrt(3), "sqrt(3)", "1/6", "36-18*sqrt(3)", "11/5"),
        (2.0, "2", "0", "pi^2/2", "2"),
    ]
    out = []
    for q, q_text, f_text, R_text, a_text in rows:
        mr = multi_river(q)
        out.append(
            {
                "q": q_text,
                "f": f_text,
                "R_exact": R_text,
                "R": mr["R"],
                "alpha_exact": a_text,
                "alpha": mr["alpha"],
            }
        )
    return out


BAXTER_ENTROPY = math.log(math.sqrt(3) * math.gamma(1 / 3) ** 1.5 / (2 * math.pi))


def baxter_entropy_product(terms: int = 100000) -> float:
    """``(1/2) sum log((3k-1)^2/((3k-2) 3k))``: the same constant as a product."""
    total = 0.0
    for k in range(1, terms + 1):
        total += math.log1p(1 / ((3 * k - 2) * (3 * k)))
    # tail: sum_{k > K} 1/(9 k^2) ~ 1/(9 K)
    total += 1 / (9 * terms)
    return total / 2
