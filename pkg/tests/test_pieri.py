import pytest

from partial_macdonald import pieri as pr
from partial_macdonald.checks import (GOLDEN, GOLDEN_GAMMA, GOLDEN_LAMBDA, GOLDEN_TARGET,
                                      block_sweep, certificate_coverage, golden_values)
from partial_macdonald.interpolation import eigenvalue_vector
from partial_macdonald.multipoly import SparsePolynomial
from partial_macdonald.partial import P
from partial_macdonald.qtfield import ONE, parse_qt, q, t
from partial_macdonald.shapes import SplitComposition as SC


def targets(lam, gamma):
    return {tm.target: tm.I1 for tm in pr.support_set(lam, gamma)}


def test_support_small():
    assert targets((1,), (0,)) == {SC((2,), (0,)): (), SC((1,), (1,)): (1,)}
    assert targets((0,), (0,)) == {SC((1,), (0,)): (1,)}


def test_golden_term():
    term = pr.find_term(GOLDEN_LAMBDA, GOLDEN_GAMMA, GOLDEN_TARGET)
    assert term.I1 == (1, 3)
    assert term.distinguished == 1 and term.increased == 2
    vals = golden_values()
    for name in ("f-ratio", "p-I1", "p-prime", "p-2", "estar-ratio", "j2", "j-ratio"):
        assert vals[name] == parse_qt(GOLDEN[name]), name
    assert vals["A-integral"] == vals["A-cancelled"] == parse_qt(GOLDEN["A"])


def test_find_term_rejects_outside_support():
    with pytest.raises(pr.PieriError):
        pr.find_term((1,), (0,), SC((1,), (0,)))


def test_bad_blocks():
    with pytest.raises(pr.PieriError):
        pr.support_set((0, 1), (0,))
    with pytest.raises(pr.PieriError):
        pr.xj_product((0,), (0,), 1)


def test_index_action_on_golden_certificate():
    # reversed (gamma|lambda~) with reversed chain positions
    assert pr.d_I_apply((1, 0, 1, 1, 3, 1), 3, (1, 3), (), 4) == (1, 0, 1, 2, 3, 1)


def _reversed_certificate(s, tm):
    k = s.k
    I1 = tuple(sorted(k + 1 - i for i in tm.I1))
    I2 = tuple(range(k + 1, k + tm.m + 1))
    return s.gamma[::-1] + tm.lambda_tilde[::-1], I1, I2


@pytest.mark.parametrize("s", [s for s in block_sweep(4, 3)], ids=str)
def test_index_action_reproduces_support(s):
    for tm in pr.support_set(s.lam, s.gamma):
        nu, I1, I2 = _reversed_certificate(s, tm)
        out = pr.d_I_apply(nu, s.k, I1, I2, s.k + 1)
        assert out == tm.target.gamma[::-1] + tm.mu_tilde[::-1]
        assert sum(out) == sum(nu) + 1
        if tm.m == 0:
            back = pr.I1_action(pr.I2_action(eigenvalue_vector(out, "z"), s.k, I2, s.k + 1), s.k, I1)
            assert back == eigenvalue_vector(nu, "z")


def test_index_set_validation():
    with pytest.raises(pr.PieriError):
        pr.d_I_apply((0, 0, 0), 1, (2,), (), 2)
    with pytest.raises(pr.PieriError):
        pr.d_I_prime_apply((0, 0, 0), 1, 2, (), (), 0)


def test_first_pieri_coefficient():
    term = pr.find_term((0,), (0,), SC((1,), (0,)))
    assert pr.pieri_C((0,), (0,), term) == ONE
    assert pr.e1_product((0,), (0,)) == P((1,), (0,))


SWEEP = [s for s in block_sweep(3, 3)]


@pytest.mark.parametrize("s", SWEEP, ids=str)
def test_coefficients_match_oracle(s):
    orc = pr.oracle_expand(pr.e1_product(s.lam, s.gamma), s.n, s.k).coefficients
    terms = pr.support_set(s.lam, s.gamma)
    assert {tm.target for tm in terms} == set(orc)
    for tm in terms:
        assert pr.pieri_C(s.lam, s.gamma, tm) == orc[tm.target]
        assert pr.pieri_J(s.lam, s.gamma, tm) == pr.simplified_A(s.lam, s.gamma, tm)
        assert pr.j_ratio(s.lam, s.gamma, tm, "box") == pr.j_ratio(s.lam, s.gamma, tm, "ratio")
        assert all(pr.cancellation_identities(s.lam, s.gamma, tm).values())


@pytest.mark.parametrize("s", [s for s in block_sweep(3, 2)], ids=str)
def test_integral_coefficients_match_oracle(s):
    orc = pr.oracle_expand(pr.e1_product(s.lam, s.gamma, "J"), s.n, s.k, "J").coefficients
    for tm in pr.support_set(s.lam, s.gamma):
        assert pr.pieri_J(s.lam, s.gamma, tm) == orc[tm.target]


def test_j2_row_shift_matters():
    # on the golden term no box sits in row c, elsewhere the extra t is needed
    term = pr.find_term(GOLDEN_LAMBDA, GOLDEN_GAMMA, GOLDEN_TARGET)
    assert pr.j2_factor(GOLDEN_LAMBDA, GOLDEN_GAMMA, term, corrected=False) == parse_qt(GOLDEN["j2"])
    term = pr.find_term((1,), (0,), SC((1,), (1,)))
    assert pr.j2_factor((1,), (0,), term, corrected=False) != pr.j2_factor((1,), (0,), term)


def test_oracle_rejects_non_members():
    with pytest.raises(pr.PieriError):
        pr.oracle_expand(SparsePolynomial.var(2, 1) + SparsePolynomial.one(2), 2, 1)
    with pytest.raises(pr.OracleError):
        pr.oracle_expand(SparsePolynomial.var(3, 1), 3, 1)


def test_xj_small_example():
    c = (ONE - t) / (ONE - q * t)
    vec = pr.xj_expand((0,), (0,), 2)
    assert vec.coefficients == {SC((0,), (1,)): ONE, SC((1,), (0,)): -c}
    x2 = SparsePolynomial.var(2, 2)
    assert x2 == P((0,), (1,)) - P((1,), (0,)).scale(c)


@pytest.mark.parametrize("s", [s for s in block_sweep(3, 2)], ids=str)
def test_xj_routes(s):
    for j in range(s.n - s.k + 1, s.n + 1):
        orc = pr.oracle_expand(pr.xj_product(s.lam, s.gamma, j), s.n, s.k).coefficients
        assert pr.xj_expand(s.lam, s.gamma, j).coefficients == orc
        assert pr.xj_expand(s.lam, s.gamma, j, "evaluation").coefficients == orc


def test_xj_normalising_arrangement_is_free():
    target = SC((1, 1, 0), (0,))
    base = pr.nonsym_D((1, 0, 0), (1,), 4, target)
    for arr in [(1, 0, 1), (0, 1, 1)]:
        assert pr.nonsym_D((1, 0, 0), (1,), 4, target, arrangement=arr) == base
    with pytest.raises(pr.PieriError):
        pr.nonsym_D((1, 0, 0), (1,), 4, target, arrangement=(2, 0, 0))
    with pytest.raises(pr.PieriError):
        pr.nonsym_D((1, 0, 0), (1,), 4, target, route="guess")


@pytest.mark.parametrize("nu,target,i", [((0, 1, 0), (1, 1, 0), 2), ((1, 0, 2), (2, 0, 2), 3),
                                          ((0, 0, 1), (1, 0, 1), 1)], ids=str)
def test_choice_sets_sum_to_word_value(nu, target, i):
    from itertools import combinations
    point = eigenvalue_vector(target, "z")
    word = pr.ztilde_word(i, 3)
    total = 0 * ONE
    for r in range(3):
        for S in combinations((1, 2), r):
            coef, pt = pr.push_choice(word, S, point)
            total = total + coef * pr._estar_z(nu, pt)
    assert total == pr._eval_word(word, nu, point)


def test_ztilde_word_shape():
    assert pr.ztilde_word(2, 3) == [("H", 2), ("Phi", 0), ("H", 1)]
    assert pr.ztilde_word(1, 2) == [("H", 1), ("Phi", 0)]


def test_single_certificate_coverage_is_partial():
    # frozen tally over n <= 4, degree <= 3: (agrees, disagrees, no certificate)
    assert certificate_coverage(4, 3) == (489, 24, 390)
