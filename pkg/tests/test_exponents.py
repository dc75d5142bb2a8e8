import math

import pytest
from hypothesis import given, strategies as st

from meandrics.exponents import (
    ALPHA_00,
    ALPHA_BAR_00,
    BAXTER_ENTROPY,
    alpha_bar_p0,
    alpha_p0,
    baxter_entropy_product,
    central_charge,
    dense_on_charge,
    dressed_dimension,
    electric_charge,
    endpoint_weight,
    exponent_point,
    kpz_gamma,
    multi_river,
    multi_river_table,
    winding_transition,
)
from meandrics.limits import DomainError

weights = st.floats(0, 2, allow_nan=False)


@given(weights)
def test_electric_charge_inverts_cosine(x):
    f = electric_charge(x)
    assert 0 <= f <= 0.5
    assert 2 * math.cos(math.pi * f) == pytest.approx(x, abs=1e-12)


def test_electric_charge_domain():
    for bad in (-0.1, 2.1, float("nan")):
        with pytest.raises(DomainError):
            electric_charge(bad)


@given(weights, weights)
def test_alpha_depends_only_on_c(q, p):
    rec = exponent_point(q, p)
    if rec.kpz_valid:
        # alpha = 2 - gamma for the two-flavour theory
        assert rec.alpha == pytest.approx(2 - rec.gamma, abs=1e-12)


@given(st.floats(-30, 1))
def test_kpz_gamma_range(c):
    g = kpz_gamma(c)
    assert g <= 0
    assert dressed_dimension(0, c) == pytest.approx(0, abs=1e-12)


def test_kpz_guards():
    with pytest.raises(DomainError):
        kpz_gamma(1.5)
    with pytest.raises(DomainError):
        dressed_dimension(-1, 0)


def test_free_fermion_point():
    rec = exponent_point(1, 1)
    assert rec.c == pytest.approx(0, abs=1e-12)
    assert rec.alpha == pytest.approx(2.5)
    assert rec.alpha_bar == pytest.approx(1.5)
    assert rec.R_q1 == pytest.approx(4.5)


def test_endpoint_weight_vanishes_at_one_third():
    assert endpoint_weight(1 / 3) == pytest.approx(0, abs=1e-15)
    assert endpoint_weight(0) == pytest.approx(1 / 16)


def test_pure_meander_exponents():
    rec = exponent_point(0, 0)
    assert rec.c == pytest.approx(-4)
    assert rec.alpha == pytest.approx(ALPHA_00, abs=1e-12)
    assert rec.alpha_bar == pytest.approx(ALPHA_BAR_00, abs=1e-12)
    assert ALPHA_00 == pytest.approx(3.4201328816, abs=1e-9)
    assert ALPHA_BAR_00 == pytest.approx(2.0531987328, abs=1e-9)


def test_outside_kpz_range():
    rec = exponent_point(2, 2)
    assert rec.c == pytest.approx(2)
    assert not rec.kpz_valid
    assert rec.alpha == 2
    assert math.isnan(rec.gamma) and math.isnan(rec.alpha_bar)


def test_p0_formulas():
    assert alpha_p0(0) == pytest.approx(ALPHA_00)
    assert alpha_bar_p0(0) == pytest.approx(ALPHA_BAR_00)
    assert alpha_p0(1) == pytest.approx(exponent_point(1, 0).alpha)
    with pytest.raises(DomainError):
        alpha_bar_p0(2)
    assert math.isnan(exponent_point(2, 0).alpha_bar)


def test_winding_transition():
    qc = winding_transition()
    assert qc == pytest.approx(1.674, abs=1e-3)
    assert dense_on_charge(qc) == pytest.approx(0.75, abs=1e-12)
    assert alpha_bar_p0(qc) == pytest.approx(1, abs=1e-6)


def test_multi_river_table():
    rows = multi_river_table()
    assert [r["q"] for r in rows] == ["0", "1", "sqrt(2)", "sqrt(3)", "2"]
    R = [4, 4.5, 16 - 8 * math.sqrt(2), 36 - 18 * math.sqrt(3), math.pi**2 / 2]
    A = [3, 2.5, 7 / 3, 11 / 5, 2]
    for r, Rx, Ax in zip(rows, R, A):
        assert abs(r["R"] - Rx) < 1e-10
        assert abs(r["alpha"] - Ax) < 1e-10


@given(st.floats(0, 2))
def test_multi_river_is_continuous_at_two(q):
    mr = multi_river(q)
    assert 4 - 1e-12 <= mr["R"] <= math.pi**2 / 2 + 1e-12
    assert mr["x"] * mr["R"] == pytest.approx(1)


def test_central_charge_corners():
    assert central_charge(0, 0) == 2
    assert central_charge(0.5, 0.5) == pytest.approx(-4)


def test_baxter_constant():
    assert baxter_entropy_product() == pytest.approx(BAXTER_ENTROPY, abs=1e-11)
    assert BAXTER_ENTROPY == pytest.approx(0.1895600483, abs=1e-10)


@pytest.mark.parametrize("q", [0, 1, 2])
def test_p0_closed_form_matches_general_formula(q):
    rec = exponent_point(q, 0)
    assert rec.c == pytest.approx(dense_on_charge(q) - 2, abs=1e-12)
    assert alpha_p0(q) == pytest.approx(rec.alpha, abs=1e-10)
    if q < winding_transition():
        assert alpha_bar_p0(q) == pytest.approx(rec.alpha_bar, abs=1e-10)
