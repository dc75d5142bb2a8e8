from fractions import Fraction
from math import factorial

import pytest

from meandrics.limits import DomainError
from meandrics.onematrix import (
    EvenPotential,
    evaluate_z,
    finite_n_free_energy,
    planar_free_energy,
    planar_moments,
    planar_r_series,
    quartic_closed_f0,
    quartic_critical,
    quartic_f0_coefficients,
    string_equation_finite_N,
    wick_vertices,
)
from meandrics.wick import StarSystem, connected_free_energy, gaussian_average, laurent_n


def map_count(n):
    """Rooted planar quadrangulations with symmetry factors: 3^n (2n-1)!/(n! (n+2)!)."""
    return Fraction(3**n * factorial(2 * n - 1), factorial(n) * factorial(n + 2))


def test_f0_closed_form_first_terms():
    assert quartic_f0_coefficients(6) == [
        Fraction(1, 2), Fraction(9, 8), Fraction(9, 2), Fraction(189, 8), Fraction(729, 5), Fraction(8019, 8)
    ]


def test_f0_against_closed_form_and_counting_formula():
    coeffs = quartic_f0_coefficients(12)
    closed = quartic_closed_f0(12)
    for n, c in enumerate(coeffs, start=1):
        assert c == closed[n] == map_count(n)


@pytest.mark.parametrize("terms", [{4: 1, 6: 2}, {6: Fraction(1, 3)}, {4: -1, 6: 1}])
def test_planar_free_energy_is_leading_wick_term(terms):
    pot = EvenPotential.from_mapping(terms)
    wick = connected_free_energy(wick_vertices(pot), order=2)
    planar = planar_free_energy(pot, 2)
    for e, c in wick.items():
        assert planar.coefficient(e) == c[2]


def test_planar_moments_against_wick():
    pot = EvenPotential.quartic()
    for n in (2, 4):
        m = planar_moments(pot, n, 1)
        assert m.coefficient((0,)) == Fraction(factorial(n), factorial(n // 2) * factorial(n // 2 + 1))
        # first order: (N/4) <Tr M^n Tr M^4>_connected / N, leading power N^0
        joint = gaussian_average(StarSystem([[1] * n, [1] * 4]))
        conn = joint - gaussian_average([[1] * n]) * gaussian_average([[1] * 4])
        assert m.coefficient((1,)) == Fraction(1, 4) * conn[0]
    assert not planar_moments(pot, 3, 2).terms


def test_string_equation_first_order():
    pot = EvenPotential.quartic()
    N = 5
    rs = string_equation_finite_N(pot, N, 3, 2)
    for m, r in enumerate(rs, start=1):
        assert r.coefficient((0,)) == Fraction(m, N)
        assert r.coefficient((1,)) == Fraction(3 * m * m, N * N)


def test_string_equation_is_satisfied():
    pot = EvenPotential.quartic()
    N, order = 4, 4
    rs = string_equation_finite_N(pot, N, 3, order)
    g = pot.space(order).variable("g")
    r = {m: rs[m - 1] for m in range(1, 4)}
    r[0] = pot.space(order).constant(0)
    for m in (1, 2):
        lhs = r[m] * (pot.space(order).constant(1) - g * (r[m - 1] + r[m] + r[m + 1]))
        assert lhs == pot.space(order).constant(Fraction(m, N))


def test_one_by_one_integral():
    # log E[exp(g x^4/4)] for a standard normal: 3g/4 + (105/32 - 9/32) g^2 ...
    F = finite_n_free_energy(EvenPotential.quartic(), 1, 2)
    assert F.coefficient((1,)) == Fraction(3, 4)
    assert F.coefficient((2,)) == Fraction(105, 32) - Fraction(9, 32)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_finite_n_sextic_against_wick(N):
    pot = EvenPotential.from_mapping({6: 1})
    wick = connected_free_energy(wick_vertices(pot), order=2)
    op = finite_n_free_energy(pot, N, 2)
    for k in (1, 2):
        assert wick.coefficient((k,))(N) == op.coefficient((k,))


def test_r_series_at_z_one():
    pot = EvenPotential.quartic()
    r = planar_r_series(pot, 4)
    r1 = evaluate_z(pot, r, 1)
    # r = (1 - sqrt(1 - 12 g))/(6 g) at z = 1
    expected = [1, 3, 18, 135, 1134]
    assert [r1.coefficient((k,)) for k in range(5)] == expected


def test_potential_validation():
    with pytest.raises(DomainError):
        EvenPotential([(3, "g", 1)])
    with pytest.raises(DomainError):
        EvenPotential([(2, "m", 1)])
    with pytest.raises(ValueError):
        EvenPotential([(4, "g", 1), (6, "g", 1)])


def test_critical_point():
    crit = quartic_critical(30)
    assert crit.g_c == Fraction(1, 12)
    ratios = crit.ratios()
    assert all(a < b < 12 for a, b in zip(ratios, ratios[1:]))
    for n, r in enumerate(ratios, start=1):
        assert r == pytest.approx(3 * (2 * n + 1) * 2 * n / ((n + 1) * (n + 3)), rel=1e-12)


def test_recursion_coefficients_approach_planar_r():
    """r_{floor(zN)} tends to the planar r(z) coefficientwise as N grows."""
    pot = EvenPotential.quartic()
    order = 2
    planar = planar_r_series(pot, order)
    for z in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
        target = evaluate_z(pot, planar, z)
        errors = []
        for N in (8, 16, 32):
            m = int(z * N)
            r = string_equation_finite_N(pot, N, m, order)[m - 1]
            errors.append(max(abs(r.coefficient((k,)) - target.coefficient((k,))) for k in range(order + 1)))
        assert errors[0] > errors[1] > errors[2]
        assert errors[2] < Fraction(1, 2) * errors[0]
