import random

import pytest
from hypothesis import given, strategies as st

from partial_macdonald.checks import random_polynomial
from partial_macdonald.hecke import (HeckeError, apply_H, apply_Hbar, apply_T, apply_word,
                                     block_words, convention_map, e1, symmetrize_e_plus)
from partial_macdonald.multipoly import SparsePolynomial
from partial_macdonald.nonsym import E, expand_in_E
from partial_macdonald.qtfield import ONE, t
from partial_macdonald.shapes import orbit

from sympy_oracle import H_op, T_op, equal, to_sympy


def x(n, i):
    return SparsePolynomial.var(n, i)


seeds = st.integers(0, 10_000)


def corpus(seed, n):
    return random_polynomial(random.Random(seed), n)


def test_T_examples():
    assert apply_T(1, x(2, 1)) == x(2, 2)
    assert apply_T(1, x(2, 2)) == x(2, 1).scale(t) + x(2, 2).scale(t - ONE)
    sym = x(2, 1) * x(2, 2) + x(2, 1) + x(2, 2)
    assert apply_T(1, sym) == sym.scale(t)


def test_H_example():
    assert apply_H(1, x(2, 1)) == x(2, 2).scale(t) + x(2, 1).scale(t - ONE)


def test_index_range():
    with pytest.raises(HeckeError):
        apply_T(2, x(2, 1))
    with pytest.raises(HeckeError):
        apply_H(0, x(2, 1))


@pytest.mark.parametrize("n", [2, 3])
@given(seed=seeds)
def test_T_and_H_match_symbolic_formula(n, seed):
    f = corpus(seed, n)
    for i in range(1, n):
        assert equal(to_sympy(apply_T(i, f)), T_op(to_sympy(f), n, i))
        assert equal(to_sympy(apply_H(i, f)), H_op(to_sympy(f), n, i))


@pytest.mark.parametrize("n", [2, 3, 4])
@given(seed=seeds)
def test_quadratic_and_braid(n, seed):
    f = corpus(seed, n)
    for i in range(1, n):
        g = apply_T(i, f)
        assert apply_T(i, g) == g.scale(t - ONE) + f.scale(t)
    for i in range(1, n - 1):
        assert apply_word((i, i + 1, i), f) == apply_word((i + 1, i, i + 1), f)
        assert apply_word((i, i + 1, i), f, "H") == apply_word((i + 1, i, i + 1), f, "H")
    for i in range(1, n):
        for j in range(i + 2, n):
            assert apply_T(i, apply_T(j, f)) == apply_T(j, apply_T(i, f))


@given(seed=seeds)
def test_H_Hbar_is_t(seed):
    f = corpus(seed, 3)
    for i in (1, 2):
        assert apply_H(i, apply_Hbar(i, f)) == f.scale(t)
    sym = x(3, 1) + x(3, 2)
    assert apply_Hbar(1, sym) == sym


def test_word_conventions():
    f = x(3, 1) * x(3, 1) + x(3, 3)
    assert apply_word((), f) == f
    # rightmost letter acts first
    assert apply_word((1, 2), f) == apply_T(1, apply_T(2, f))
    with pytest.raises(HeckeError):
        apply_word((1,), f, "Y")


def test_symmetrizer_examples():
    f = x(2, 1)
    assert symmetrize_e_plus(f, 2, 2) == f
    assert symmetrize_e_plus(f, 2, 0) == x(2, 1) + x(2, 2)
    assert symmetrize_e_plus(SparsePolynomial.one(3), 3, 0) == SparsePolynomial.constant(
        3, ONE + 2 * t + 2 * t**2 + t**3)


@pytest.mark.parametrize("n,k", [(3, 0), (3, 1), (4, 1), (4, 2)])
def test_symmetrizer_output_is_block_symmetric(n, k):
    f = random_polynomial(random.Random(n * 10 + k), n)
    g = symmetrize_e_plus(f, n, k)
    assert g == symmetrize_e_plus(f, n, k, method="naive")
    for i in range(1, n - k):
        assert g.swap_vars(i) == g
        assert apply_T(i, g) == g.scale(t)


def test_block_words_enumerate_group():
    assert len(set(block_words(3))) == 6
    assert all(min(w, default=2) >= 2 for w in block_words(2, offset=1))


@pytest.mark.parametrize("mu", [(1, 0), (0, 2, 1), (1, 0, 1), (2, 0, 0)])
def test_dictionary_T_to_H(mu):
    n = len(mu)
    f = E(mu)
    for i in range(1, n):
        assert convention_map(apply_T(i, f)) == apply_H(n - i, convention_map(f))
    assert convention_map(convention_map(f)) == f
    assert convention_map(x(n, 1)) == x(n, n)


@pytest.mark.parametrize("mu", [(2, 0, 1), (1, 1, 0), (0, 1, 2)])
def test_T_on_E_stays_in_orbit_span(mu):
    for w in ((1,), (2,), (1, 2), (2, 1, 2)):
        keys = expand_in_E(apply_word(w, E(mu))).keys()
        assert set(keys) <= set(orbit(mu))


def test_e1():
    assert e1(3, 2) == x(3, 1) + x(3, 2)
