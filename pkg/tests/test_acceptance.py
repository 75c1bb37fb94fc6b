"""One test per acceptance criterion; a summary line per criterion is printed at the end of the run."""
import time

import pytest

from partial_macdonald import pieri as pr
from partial_macdonald.checks import (GOLDEN, certificate_coverage, golden_checks, golden_values,
                                      hecke_checks, partial_checks, pieri_checks, run_checks,
                                      structure_checks, xj_checks)
from partial_macdonald.qtfield import parse_qt

SWEEP_N, SWEEP_DEG = 4, 3
N5_SPOTS = [((1, 0, 0), (1, 0)), ((1, 1), (0, 1, 0)), ((1, 0, 0, 0), (1,))]


def _all_pass(checks, identities=None):
    if identities is not None:
        checks = [c for c in checks if c.identity in identities]
    assert checks, "empty check list"
    results = run_checks(checks)
    failed = [f"{r.identity} {r.instance}" for r in results if not r.passed]
    assert not failed, failed[:10]
    return len(results)


def test_criterion_1_golden_example():
    start = time.perf_counter()
    _all_pass(golden_checks())
    vals = golden_values()
    assert vals["I1"] == (1, 3)
    assert vals["A-integral"] == vals["A-cancelled"] == parse_qt(GOLDEN["A"])
    assert time.perf_counter() - start < 10


def test_criterion_2_e1_oracle_equivalence():
    _all_pass(pieri_checks(SWEEP_N, SWEEP_DEG, j_oracle=True),
              {"pieri-support", "pieri-C", "pieri-J-oracle", "pieri-nonvanishing"})
    for lam, gamma in N5_SPOTS:
        n, k = len(lam) + len(gamma), len(gamma)
        oracle = pr.oracle_expand(pr.e1_product(lam, gamma), n, k).coefficients
        terms = pr.support_set(lam, gamma)
        assert {tm.target for tm in terms} == set(oracle)
        for tm in terms:
            assert pr.pieri_C(lam, gamma, tm) == oracle[tm.target]


def test_criterion_3_xj_oracle_equivalence():
    # full sweep by the summed push expansion, E* evaluation route on n <= 3
    _all_pass(xj_checks(SWEEP_N, SWEEP_DEG))


@pytest.mark.xfail(strict=True, reason="the one-push closed form misses or misvalues part of the support")
def test_criterion_3b_xj_closed_form_certificates():
    correct, wrong, missed = certificate_coverage(SWEEP_N, SWEEP_DEG)
    assert (wrong, missed) == (0, 0), (correct, wrong, missed)


def test_criterion_4_integrality_and_specialization():
    _all_pass(partial_checks(SWEEP_N, SWEEP_DEG), {"J-integrality", "j-zero-column", "J-specialization"})


def test_criterion_5_stability():
    _all_pass(partial_checks(SWEEP_N, SWEEP_DEG), {"stability"})


def test_criterion_6_hecke_axioms():
    n = _all_pass(hecke_checks(seed=0, count=50, ns=(2, 3, 4)),
                  {"hecke-quadratic", "hecke-quadratic-H", "hecke-braid", "hecke-braid-H", "hecke-commute"})
    assert n >= 5 * 50 * 3


def test_criterion_7_E_and_Estar_structure():
    _all_pass(structure_checks(max_n=3, max_deg=4, operator_deg=4))


def test_criterion_8_cancellation_ledger():
    _all_pass(pieri_checks(SWEEP_N, SWEEP_DEG),
              {"pieri-J-equals-A", "cancel-j-product", "cancel-estar-product", "cancel-skipped-columns",
               "cancel-tail-columns", "cancel-symmetric-prefix", "cancel-hook-collapse", "cancel-remnant",
               "cancel-repeated-height"})
