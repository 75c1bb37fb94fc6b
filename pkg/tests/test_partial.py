import pytest

from partial_macdonald.hecke import apply_T
from partial_macdonald.multipoly import SparsePolynomial
from partial_macdonald.nonsym import E, expand_in_E, integral_E
from partial_macdonald.partial import (J, P, P_coset, PartialError, ProportionalityError,
                                       expand_P_in_E, f_closed, f_recursive, j_box_product,
                                       j_constant, j_value, proportionality, stability_check)
from partial_macdonald.pieri import oracle_expand
from partial_macdonald.qtfield import ONE, q, t
from partial_macdonald.shapes import orbit, split_basis


def x(n, i):
    return SparsePolynomial.var(n, i)


BLOCKS = [(s.lam, s.gamma) for n in (2, 3) for k in range(0, n + 1) for d in range(3)
          for s in split_basis(n, k, d)]


def test_small_examples():
    assert P((0,), (0,)) == SparsePolynomial.one(2)
    assert P((1, 0), ()) == x(2, 1) + x(2, 2)
    assert P((), (0, 2)) == E((0, 2))
    with pytest.raises(PartialError):
        P((0, 1), ())


def test_symmetric_specialization_degree_two():
    c = (ONE + q) * (ONE - t) / (ONE - q * t)
    assert P((2, 0), ()) == x(2, 1) ** 2 + x(2, 2) ** 2 + (x(2, 1) * x(2, 2)).scale(c)


@pytest.mark.parametrize("lam,gamma", BLOCKS, ids=str)
def test_P_structure(lam, gamma):
    f = P(lam, gamma)
    n = len(lam) + len(gamma)
    assert f.is_homogeneous()
    assert f == P_coset(lam, gamma)
    for i in range(1, len(lam)):
        assert f.swap_vars(i) == f
        assert apply_T(i, f) == f.scale(t)
    coeffs = expand_P_in_E(lam, gamma)
    assert set(coeffs.keys()) <= {mu + gamma for mu in orbit(lam)}
    assert n == len(lam) + len(gamma)


@pytest.mark.parametrize("lam,gamma", BLOCKS, ids=str)
def test_f_routes(lam, gamma):
    coeffs = expand_in_E(P(lam, gamma))
    for mu in orbit(lam):
        assert f_closed(mu, lam, gamma) == f_recursive(mu, lam, gamma) == coeffs[mu + gamma]
    assert f_closed(tuple(sorted(lam)), lam, gamma) == ONE


def test_f_outside_orbit():
    with pytest.raises(PartialError):
        f_closed((2, 0), (1, 0), ())


def test_expansion_of_x2():
    coeffs = expand_in_E(x(2, 2))
    assert coeffs == {(0, 1): ONE, (1, 0): -(ONE - t) / (ONE - q * t)}


@pytest.mark.parametrize("n,k,d", [(2, 1, 2), (3, 1, 2), (3, 2, 2), (4, 2, 2)])
def test_P_basis_is_independent(n, k, d):
    for s in split_basis(n, k, d):
        vec = oracle_expand(P(s.lam, s.gamma), n, k)
        assert dict(vec.coefficients) == {s: ONE}


def test_classical_integral_forms():
    assert j_constant((1, 0), ()) == ONE - t
    assert j_constant((1, 1), ()) == (ONE - t) * (ONE - t**2)
    assert j_constant((2, 1, 0), ()) == (ONE - t) ** 2 * (ONE - q * t**2)


@pytest.mark.parametrize("lam,gamma", BLOCKS, ids=str)
def test_integral_form(lam, gamma):
    assert J(lam, gamma).is_integral()
    assert j_value(lam, gamma, "box") == j_value(lam, gamma, "ratio")
    assert j_value(lam + (0,), gamma) == j_value(lam, gamma)


def test_integral_form_specializations():
    assert J((), (1, 0, 2)) == integral_E((1, 0, 2))
    assert j_constant((0, 0), (0,)) == ONE
    assert J((2, 1), (1,)).is_integral()
    assert j_box_product((), ()) == ONE


def test_proportionality_failure():
    with pytest.raises(ProportionalityError):
        proportionality(x(2, 1), x(2, 2))
    with pytest.raises(ProportionalityError):
        proportionality(x(2, 1), SparsePolynomial.zero(2))


@pytest.mark.parametrize("lam,gamma", [((), (1,)), ((), (2, 0)), ((1,), (1,)), ((2, 1), (0, 2)),
                                       ((1, 1), (0,)), ((0,), (1, 1))], ids=str)
def test_stability(lam, gamma):
    assert stability_check(lam, gamma)


def test_unknown_j_route():
    with pytest.raises(PartialError):
        j_value((1,), (0,), "guess")
