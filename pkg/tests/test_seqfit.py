import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from meandrics.arches import catalan
from meandrics.seqfit import (
    even_subsequence,
    fit_power_law,
    large_q_reference,
    read_sequence_csv,
    write_sequence_csv,
)


def test_pure_exponential():
    raw = fit_power_law([2**n for n in range(1, 30)], richardson=0)
    assert raw.R_estimate == pytest.approx(2, abs=1e-14)
    assert raw.alpha_estimate == pytest.approx(0, abs=1e-12)
    # extrapolation only amplifies rounding here
    r = fit_power_law([2**n for n in range(1, 30)])
    assert r.R_estimate == pytest.approx(2, abs=1e-10)


@given(st.floats(1.5, 6), st.floats(-2, 4))
def test_exact_power_law_is_recovered(R, alpha):
    seq = [R**n * n ** (-alpha) for n in range(1, 25)]
    fit = fit_power_law(seq, richardson=0)
    assert fit.R_estimate == pytest.approx(R, rel=1e-9)
    assert fit.alpha_estimate == pytest.approx(alpha, abs=1e-6)


def test_catalan():
    fit = fit_power_law([catalan(n) for n in range(1, 61)])
    assert fit.R_estimate == pytest.approx(4, rel=1e-3)
    assert fit.alpha_estimate == pytest.approx(1.5, abs=0.01)


def test_catalan_squared_stride_two():
    fit = fit_power_law([catalan(n) ** 2 for n in range(1, 61)], stride=2)
    # c_n^2 ~ 16^n n^-3 = R^(2n) n^-3
    assert fit.R_estimate == pytest.approx(4, rel=1e-3)
    assert fit.alpha_estimate == pytest.approx(3, abs=0.01)


def test_convergence_improves_with_length():
    errs = []
    for top in (20, 40, 60):
        fit = fit_power_law([catalan(n) ** 2 for n in range(1, top + 1)])
        errs.append(abs(fit.alpha_estimate - 3))
    assert errs[0] > errs[1] > errs[2]


def test_big_integers_and_fractions():
    big = [catalan(n) ** 10 for n in range(200, 210)]
    assert math.isfinite(fit_power_law(big).R_estimate)
    fr = [Fraction(3**n, n) for n in range(1, 12)]
    assert fit_power_law(fr, richardson=0).R_estimate == pytest.approx(3)


def test_errors():
    with pytest.raises(ValueError):
        fit_power_law([1, 2, 3])
    with pytest.raises(ValueError):
        fit_power_law([1, 2, 0, 4, 5, 6, 7])
    with pytest.raises(ValueError):
        fit_power_law([1] * 8, stride=3)


def test_even_subsequence():
    assert even_subsequence([1, 2, 3, 4, 5, 6], 1) == ([2, 4, 6], 1)
    assert even_subsequence([10, 11, 12], 2) == ([10, 12], 1)


def test_large_q():
    ref = large_q_reference(100)
    assert ref["R_series"] / 20 == pytest.approx(1.010149, abs=1e-6)
    assert large_q_reference(1000)["Rbar_series"] == pytest.approx(1001.002, abs=1e-3)
    assert large_q_reference(1e12)["R_series"] / (2 * 1e6) == pytest.approx(1)
    with pytest.raises(ValueError):
        large_q_reference(0)


def test_csv_round_trip():
    seq = [1, 2, 10**30]
    text = write_sequence_csv(seq, start=3)
    assert text.startswith("n,value\n3,1\n")
    assert read_sequence_csv(text) == seq
    assert read_sequence_csv("5\n6\n") == [5, 6]
