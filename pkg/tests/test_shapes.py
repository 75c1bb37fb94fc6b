import pytest
from hypothesis import given, strategies as st

from partial_macdonald.qtfield import BivariatePoly
from partial_macdonald.shapes import (ShapeError, SplitComposition, arm, arm_tilde, bruhat_leq, coarm,
                                      compositions, diagram, inversions, leg, lprime, lprime_vector,
                                      minimal_word, apply_word_to_comp, orbit, orbit_and_order,
                                      partitions, poincare_W, rearrange, split_basis)

WORKED = (1, 1, 3, 1, 0, 1)
comps = st.lists(st.integers(0, 3), min_size=1, max_size=5).map(tuple)


def test_leg_examples():
    assert leg(WORKED, (3, 1)) == 2
    assert leg((1, 3, 1, 1, 0, 1), (2, 1)) == 2
    assert all(leg(WORKED, (i, h)) == 0 for i, h in enumerate(WORKED, 1) if h)


def test_arm_examples():
    assert arm(WORKED, (4, 1)) == 3
    assert arm(WORKED, (6, 1)) == 3
    assert arm((4,), (1, 2)) == 0


def test_modified_arm_examples():
    assert arm_tilde(WORKED, (3, 1)) == 4
    assert arm_tilde(WORKED, (2, 1)) == 1
    assert arm_tilde(WORKED, (3, 2)) == 0


def test_coarm_follows_counting_definition():
    assert coarm((3,), (1, 1)) == 0
    assert coarm((1, 2), (1, 1)) == 1
    # column 2 of (2,2,1): no earlier column is strictly taller and no later one is as tall
    assert coarm((2, 2, 1), (2, 1)) == 0


def test_box_outside_diagram():
    with pytest.raises(ShapeError):
        leg((1, 0), (2, 1))
    with pytest.raises(ShapeError):
        arm((1, 0), (1, 2))


def test_lprime_examples():
    assert lprime_vector((1, 3, 1, 1, 0, 1)) == (4, 0, 3, 2, 5, 1)
    assert lprime_vector((3, 2, 1)) == (0, 1, 2)
    assert lprime_vector((0, 0)) == (1, 0)
    with pytest.raises(ShapeError):
        lprime((1, 0), 3)


@given(comps)
def test_lprime_is_a_permutation(nu):
    assert sorted(lprime_vector(nu)) == list(range(len(nu)))
    assert sorted(lprime_vector(nu, "z")) == list(range(len(nu)))


def test_rearrange():
    assert rearrange((3, 1, 1), "increasing") == (1, 1, 3)
    assert rearrange((2, 2), "decreasing") == (2, 2)
    assert rearrange((0, 5, 3), "decreasing") == (5, 3, 0)


def test_poincare():
    assert poincare_W((2, 1)) == BivariatePoly(1)
    assert poincare_W((2, 2)) == BivariatePoly({(0, 0): 1, (0, 1): 1})
    assert poincare_W((1, 1, 1)) == BivariatePoly({(0, 0): 1, (0, 1): 2, (0, 2): 2, (0, 3): 1})


def test_orbit_and_order():
    assert [(e.composition, e.word, e.length) for e in orbit_and_order((1, 0))] == [
        ((0, 1), (), 0), ((1, 0), (1,), 1)]
    assert [e.composition for e in orbit_and_order((2, 2))] == [(2, 2)]
    els = orbit_and_order((2, 1, 0))
    assert len(els) == 6
    assert sorted(e.length for e in els) == [0, 1, 1, 2, 2, 3]
    assert [e.composition for e in els if e.length == 0] == [(0, 1, 2)]


@given(comps)
def test_minimal_word_reaches_target(nu):
    src = rearrange(nu, "increasing")
    w = minimal_word(src, nu)
    assert apply_word_to_comp(w, src) == nu
    assert len(w) == inversions(nu)


def test_bruhat_on_orbit():
    # the dominant arrangement is the minimum
    assert bruhat_leq((1, 0), (0, 1))
    assert not bruhat_leq((0, 1), (1, 0))
    assert bruhat_leq((2, 1, 0), (0, 1, 2))


def test_split_basis_counts():
    # partitions of length 1 times compositions of length 1
    assert len(split_basis(2, 1, 1)) == 2
    for s in split_basis(4, 2, 3):
        assert s.size == 3 and s.k == 2 and list(s.lam) == sorted(s.lam, reverse=True)
    assert SplitComposition.from_full((2, 1, 0), 1) == SplitComposition((2, 1), (0,))


def test_enumerations():
    assert len(compositions(3, 2)) == 6
    assert partitions(3, 2) == [(3, 0), (2, 1)] or sorted(partitions(3, 2)) == [(2, 1), (3, 0)]
    assert len(diagram((2, 0, 1))) == 3
    assert sorted(orbit((1, 0, 0))) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
