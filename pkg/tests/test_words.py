import pytest
from hypothesis import given, settings, strategies as st

from meandrics.arches import catalan
from meandrics.meanders import meander_polynomial, semimeander_polynomial
from meandrics.words import (
    block_word,
    cyclotomic,
    eta,
    four_block_formula,
    gamma_word,
    meander_poly_via_words,
    root_of_unity_residual,
    semimeander_poly_via_words,
)

from conftest import noncrossing_matchings


def brute_gamma(w):
    if len(w) % 2:
        return 0
    if not w:
        return 1
    return sum(
        1
        for m in noncrossing_matchings(len(w) // 2)
        if all(w[i] == w[j] for i, j in enumerate(m))
    )


@given(st.lists(st.integers(1, 3), max_size=10))
@settings(max_examples=150)
def test_gamma_against_brute_force(w):
    assert gamma_word(w) == brute_gamma(w)


def test_one_colour_gives_catalan():
    for p in range(8):
        assert gamma_word([1] * (2 * p)) == catalan(p) == eta(2 * p)
    assert eta(5) == 0


@given(st.lists(st.integers(1, 3), max_size=10))
def test_gamma_is_cyclic_and_reversal_invariant(w):
    g = gamma_word(w)
    assert g == gamma_word(w[::-1])
    if w:
        assert g == gamma_word(w[1:] + w[:1])


@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))
def test_four_block_formula(n1, n2, n3, n4):
    w = block_word([n1, n2, n3, n4], 2)
    assert gamma_word(w) == four_block_formula(n1, n2, n3, n4)


def test_block_word():
    assert block_word([2, 1, 3], 2) == (1, 1, 2, 1, 1, 1)
    assert block_word([1, 1, 1], 3, start=2) == (2, 3, 1)


def test_cyclotomic():
    assert cyclotomic(1) == [-1, 1]
    assert cyclotomic(3) == [1, 1, 1]
    assert cyclotomic(4) == [1, 0, 1]
    assert cyclotomic(6) == [1, -1, 1]


@pytest.mark.parametrize("k", [2, 3, 4])
@given(data=st.data())
@settings(max_examples=40)
def test_root_of_unity_recursion(k, data):
    L = k * data.draw(st.integers(1, 2))
    blocks = data.draw(st.lists(st.integers(1, 3), min_size=L, max_size=L))
    assert not any(root_of_unity_residual(blocks, k))


def test_root_of_unity_needs_full_cycles():
    with pytest.raises(ValueError):
        root_of_unity_residual([1, 2, 3], 2)


@pytest.mark.parametrize("q", [1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_word_sums(n, q):
    assert meander_poly_via_words(n, q) == meander_polynomial(n)(q)
    assert semimeander_poly_via_words(n, q) == semimeander_polynomial(n)(q)


def test_symmetry_reduction_is_exact():
    assert meander_poly_via_words(3, 3, reduce_symmetry=False) == meander_poly_via_words(3, 3)
    assert semimeander_poly_via_words(4, 3, reduce_symmetry=False) == semimeander_poly_via_words(4, 3)
