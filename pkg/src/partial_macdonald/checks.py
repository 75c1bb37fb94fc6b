"""Named verification suites.

A suite is a list of ``Check`` objects, each a zero-argument predicate with an
identity name, a short description of the statement (``anchor``) and the
instance it is applied to.  ``run_checks`` executes them, optionally on a
thread pool, and returns results in canonical (identity, instance) order.
"""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from . import pieri as pr
from .hecke import apply_H, apply_Hbar, apply_T, convention_map, symmetrize_e_plus
from .interpolation import (Edagger, Estar, Estar_principal, Psi_inv, apply_Xi, apply_Z,
                            apply_Z_spectral, check_vanishing, eigenvalue_vector,
                            evaluate_at_eigenvalues)
from .multipoly import SparsePolynomial
from .nonsym import E, E_intertwiner, expand_in_E, integral_E
from .partial import J, P, f_closed, f_recursive, j_value, stability_check
from .qtfield import ONE, ZERO, QtRational, parse_qt, t
from .shapes import SplitComposition, arm, compositions, leg, orbit, split_basis, triangular_key

THREADS_ENV = "PARTIAL_MACDONALD_THREADS"


@dataclass(frozen=True)
class Check:
    identity: str
    anchor: str
    instance: str
    fn: Callable[[], bool]


@dataclass(frozen=True)
class CheckResult:
    identity: str
    anchor: str
    instance: str
    elapsed: float
    passed: bool
    detail: str = ""

    def to_json(self, timing: bool = True) -> dict:
        out = {"identity": self.identity, "anchor": self.anchor, "instance": self.instance,
               "elapsed": round(self.elapsed, 6) if timing else 0.0, "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_one(c: Check) -> CheckResult:
    t0 = time.perf_counter()
    detail = ""
    try:
        ok = bool(c.fn())
    except ArithmeticError as exc:
        # a theory violation inside a check counts as a failed check
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(c.identity, c.anchor, c.instance, time.perf_counter() - t0, ok, detail)


def run_checks(checks: Sequence[Check], threads: int | None = None) -> List[CheckResult]:
    threads = threads or thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_run_one, checks))
    else:
        results = [_run_one(c) for c in checks]
    return sorted(results, key=lambda r: (r.identity, r.instance))


def _inst(*parts) -> str:
    return " ".join(str(p) for p in parts)


def _sc(s: SplitComposition) -> str:
    return f"({','.join(map(str, s.lam))}|{','.join(map(str, s.gamma))})"


def block_sweep(max_n: int, max_deg: int, min_n: int = 2) -> Iterator[SplitComposition]:
    """Every (lam|gamma) with n in [min_n, max_n], 0 < k < n and total degree <= max_deg."""
    for n in range(min_n, max_n + 1):
        for k in range(1, n):
            for d in range(max_deg + 1):
                yield from split_basis(n, k, d)


@lru_cache(maxsize=None)
def _oracle_e1(lam, gamma, basis="P"):
    n, k = len(lam) + len(gamma), len(gamma)
    return pr.oracle_expand(pr.e1_product(lam, gamma, basis), n, k, basis)


@lru_cache(maxsize=None)
def _oracle_xj(lam, gamma, j):
    n, k = len(lam) + len(gamma), len(gamma)
    return pr.oracle_expand(pr.xj_product(lam, gamma, j), n, k)


def certificate_coverage(max_n: int = 4, max_deg: int = 3) -> Tuple[int, int, int]:
    """(correct, wrong, missed) for single-push x_j certificates against the oracle terms."""
    correct = wrong = missed = 0
    for s in block_sweep(max_n, max_deg):
        for j in range(s.n - s.k + 1, s.n + 1):
            found: Dict[SplitComposition, QtRational] = {}
            for cert in pr.xj_certificates(s.lam, s.gamma, j):
                found[cert.target] = found.get(cert.target, ZERO) + cert.value
            for target, value in _oracle_xj(s.lam, s.gamma, j).coefficients.items():
                if target not in found:
                    missed += 1
                elif found[target] == value:
                    correct += 1
                else:
                    wrong += 1
    return correct, wrong, missed


# golden ----------------------------------------------------------------------

GOLDEN_LAMBDA, GOLDEN_GAMMA = (3, 1, 1), (1, 0, 1)
GOLDEN_TARGET = SplitComposition((3, 2, 1), (1, 0, 1))
GOLDEN = {
    "eigen-source": "q*t^-4, q^3, q*t^-3, q*t^-2, t^-5, q*t^-1",
    "eigen-target": "q*t^-4, q^3, q^2*t^-1, q*t^-3, t^-5, q*t^-2",
    "f-ratio": "(1-q^2*t^2)*(1-q*t)/((1-q^2*t^3)*(1-q))",
    "p-I1": "t^3*(1-q*t^2)/(1-q*t^3)",
    "p-prime": "t^2*(1-q*t^4)/(1-q*t^3)",
    "p-2": "q^2*t^-1*(1-q^-2*t^-4)*t*((1-q*t^2)/(1-q*t^3))*((1-q*t^2)/(1-q*t))",
    "estar-ratio": "q^-3*(1-q)*(1-q*t^3)^2/((1-q*t)*(1-q*t^2)^2*(1-q^-2*t^-4))",
    "j2": "(1-t^2)/(1-q*t^3)",
    "j-ratio": "(1-q*t)*(1-t^2)*(1-q*t^4)^2/((1-t)*(1-q*t^2)*(1-q*t^4)*(1-q*t^3)^2)",
    "A": "(1-q^2*t^2)*(1-t^2)*(1-q*t^4)/((1-q^2*t^3)*(1-t)*(1-q*t^3)^2)",
}


def golden_values() -> Dict[str, object]:
    """The worked-example quantities computed by the library."""
    lam, gamma = GOLDEN_LAMBDA, GOLDEN_GAMMA
    term = pr.find_term(lam, gamma, GOLDEN_TARGET)
    return {
        "I1": term.I1,
        "eigen-source": eigenvalue_vector(term.lambda_tilde + gamma),
        "eigen-target": eigenvalue_vector(term.mu_tilde + GOLDEN_TARGET.gamma),
        "f-ratio": pr.f_ratio(lam, gamma, term),
        "p-I1": pr.p_I1(lam, gamma, term),
        "p-prime": pr.p_prime(lam, gamma, term),
        "p-2": pr.p_2(lam, gamma, term),
        "estar-ratio": pr.estar_ratio(gamma, term),
        "j2": pr.j2_factor(lam, gamma, term),
        "j-ratio": pr.j_ratio(lam, gamma, term),
        "A-integral": pr.pieri_J(lam, gamma, term),
        "A-cancelled": pr.simplified_A(lam, gamma, term),
    }


def golden_checks() -> List[Check]:
    vals = {}

    def get():
        if not vals:
            vals.update(golden_values())
        return vals

    def eq(name, key):
        def fn():
            v = get()[key]
            if isinstance(v, tuple):
                return v == tuple(parse_qt(x) for x in GOLDEN[name].split(","))
            return v == parse_qt(GOLDEN[name])
        return fn

    inst = f"{_sc(SplitComposition(GOLDEN_LAMBDA, GOLDEN_GAMMA))} -> {_sc(GOLDEN_TARGET)}"
    out = [Check("golden-I1", "certificate index set of the worked example", inst,
                 lambda: get()["I1"] == (1, 3))]
    for name in ("eigen-source", "eigen-target", "f-ratio", "p-I1", "p-prime", "p-2",
                 "estar-ratio", "j2", "j-ratio"):
        out.append(Check(f"golden-{name}", f"worked example value of {name}", inst, eq(name, name)))
    out.append(Check("golden-A-integral", "A from C times the j-ratio", inst, eq("A", "A-integral")))
    out.append(Check("golden-A-cancelled", "A from the cancelled product", inst, eq("A", "A-cancelled")))
    return out


# Pieri e1 ----------------------------------------------------------------------

def pieri_checks(max_n: int = 4, max_deg: int = 3, j_oracle: bool = False) -> List[Check]:
    out: List[Check] = []
    for s in block_sweep(max_n, max_deg):
        lam, gamma = s.lam, s.gamma

        def support(lam=lam, gamma=gamma):
            return {tm.target for tm in pr.support_set(lam, gamma)} == set(_oracle_e1(lam, gamma).keys())
        out.append(Check("pieri-support", "support set equals the oracle support", _sc(s), support))
        for term in pr.support_set(lam, gamma):
            inst = f"{_sc(s)} -> {_sc(term.target)}"
            out.append(Check("pieri-C", "evaluation coefficient equals the oracle", inst,
                             lambda lam=lam, gamma=gamma, term=term:
                             pr.pieri_C(lam, gamma, term) == _oracle_e1(lam, gamma)[term.target]))
            out.append(Check("pieri-nonvanishing", "p_I1 and C are nonzero", inst,
                             lambda lam=lam, gamma=gamma, term=term:
                             not pr.p_I1(lam, gamma, term).is_zero()
                             and not pr.pieri_C(lam, gamma, term).is_zero()))
            out.append(Check("pieri-J-equals-A", "C times j-ratio equals the cancelled product", inst,
                             lambda lam=lam, gamma=gamma, term=term:
                             pr.pieri_J(lam, gamma, term) == pr.simplified_A(lam, gamma, term)))
            out.append(Check("pieri-j-routes", "box-product j-ratio equals J/P ratio", inst,
                             lambda lam=lam, gamma=gamma, term=term:
                             pr.j_ratio(lam, gamma, term, "box") == pr.j_ratio(lam, gamma, term, "ratio")))
            for name in ("j-product", "estar-product", "skipped-columns", "tail-columns",
                         "symmetric-prefix", "hook-collapse", "remnant", "repeated-height"):
                out.append(Check(f"cancel-{name}", f"cancellation identity {name}", inst,
                                 lambda lam=lam, gamma=gamma, term=term, name=name:
                                 pr.cancellation_identities(lam, gamma, term)[name]))
            if j_oracle:
                out.append(Check("pieri-J-oracle", "J coefficient equals the J-basis oracle", inst,
                                 lambda lam=lam, gamma=gamma, term=term:
                                 pr.pieri_J(lam, gamma, term)
                                 == _oracle_e1(lam, gamma, "J")[term.target]))
    return out


def xj_checks(max_n: int = 4, max_deg: int = 3, evaluation_max_n: int = 3) -> List[Check]:
    out: List[Check] = []
    for s in block_sweep(max_n, max_deg):
        n, k = len(s.lam) + len(s.gamma), len(s.gamma)
        for j in range(n - k + 1, n + 1):
            inst = f"x_{j} {_sc(s)}"
            out.append(Check("xj-index", "index-set coefficients equal the oracle", inst,
                             lambda s=s, j=j: pr.xj_expand(s.lam, s.gamma, j).coefficients
                             == _oracle_xj(s.lam, s.gamma, j).coefficients))
            if n <= evaluation_max_n:
                out.append(Check("xj-evaluation", "E* evaluation coefficients equal the oracle", inst,
                                 lambda s=s, j=j: pr.xj_expand(s.lam, s.gamma, j, "evaluation").coefficients
                                 == _oracle_xj(s.lam, s.gamma, j).coefficients))
    return out


# Hecke axioms ------------------------------------------------------------------

def random_polynomial(rng: random.Random, n: int, max_deg: int = 3, terms: int = 4) -> SparsePolynomial:
    f = SparsePolynomial.zero(n)
    for _ in range(terms):
        d = rng.randint(0, max_deg)
        m = rng.choice(compositions(n, d))
        c = QtRational.monomial(rng.randint(-1, 1), rng.randint(-1, 1), rng.choice([-2, -1, 1, 2, 3]))
        f = f + SparsePolynomial.monomial(m, c)
    return f


def hecke_checks(seed: int = 0, count: int = 50, ns: Sequence[int] = (2, 3, 4)) -> List[Check]:
    rng = random.Random(seed)
    out: List[Check] = []
    for n in ns:
        for idx in range(count):
            f = random_polynomial(rng, n)
            inst = f"n={n} #{idx:03d}"
            out.append(Check("hecke-quadratic", "(T_i - t)(T_i + 1) = 0 for every i", inst,
                             lambda f=f, n=n: all(_quadratic(apply_T, i, f) for i in range(1, n))))
            out.append(Check("hecke-quadratic-H", "(H_i - t)(H_i + 1) = 0 for every i", inst,
                             lambda f=f, n=n: all(_quadratic(apply_H, i, f) for i in range(1, n))))
            out.append(Check("hecke-braid", "T_i T_i+1 T_i = T_i+1 T_i T_i+1", inst,
                             lambda f=f, n=n: all(_braid(apply_T, i, f) for i in range(1, n - 1))))
            out.append(Check("hecke-braid-H", "H_i H_i+1 H_i = H_i+1 H_i H_i+1", inst,
                             lambda f=f, n=n: all(_braid(apply_H, i, f) for i in range(1, n - 1))))
            out.append(Check("hecke-commute", "T_i T_j = T_j T_i for |i-j| >= 2", inst,
                             lambda f=f, n=n: all(apply_T(i, apply_T(j, f)) == apply_T(j, apply_T(i, f))
                                                  for i in range(1, n) for j in range(i + 2, n))))
            out.append(Check("hecke-H-Hbar", "H_i Hbar_i = t", inst,
                             lambda f=f, n=n: all(apply_H(i, apply_Hbar(i, f)) == f.scale(t)
                                                  for i in range(1, n))))
            out.append(Check("hecke-dictionary", "T_i corresponds to H_n-i under reversal", inst,
                             lambda f=f, n=n: all(convention_map(apply_T(i, f)) == apply_H(n - i, convention_map(f))
                                                  for i in range(1, n))))
    return out


def _quadratic(op, i, f) -> bool:
    g = op(i, f)
    return op(i, g) - g.scale(t - ONE) - f.scale(t) == SparsePolynomial.zero(f.n)


def _braid(op, i, f) -> bool:
    return op(i, op(i + 1, op(i, f))) == op(i + 1, op(i, op(i + 1, f)))


# E / E* structure ----------------------------------------------------------------

def _exchange_coefficient(nu, i) -> QtRational:
    b = (i, nu[i] + 1)
    return (ONE - t) / (ONE - QtRational.monomial(leg(nu, b) + 1, arm(nu, b)))


def t_action_law(mu, i) -> bool:
    """T_i E_mu by the three exchange cases."""
    mu = tuple(mu)
    lhs = apply_T(i, E(mu))
    sw = mu[:i - 1] + (mu[i], mu[i - 1]) + mu[i + 1:]
    if mu[i - 1] == mu[i]:
        return lhs == E(mu).scale(t)
    if mu[i - 1] > mu[i]:
        c = _exchange_coefficient(mu, i)
        return lhs == E(sw) - E(mu).scale(c)
    c = _exchange_coefficient(sw, i)
    return lhs == E(mu).scale(t - ONE + c) + E(sw).scale(t - c * (t - ONE + c))


def structure_checks(max_n: int = 3, max_deg: int = 4, operator_deg: int = 4) -> List[Check]:
    out: List[Check] = []
    for n in range(1, max_n + 1):
        for d in range(max_deg + 1):
            for mu in compositions(n, d):
                inst = f"{mu}"
                out.append(Check("E-monic-triangular", "E is monic with lower terms below mu", inst,
                                 lambda mu=mu: _monic_triangular(mu)))
                out.append(Check("E-intertwiner", "raising/exchange construction equals E", inst,
                                 lambda mu=mu: E_intertwiner(mu) == E(mu)))
                out.append(Check("Estar-vanishing", "E* vanishes at lower eigenpoints only off mu", inst,
                                 lambda mu=mu: check_vanishing(mu)))
                out.append(Check("Estar-principal", "principal value formula equals evaluation", inst,
                                 lambda mu=mu: evaluate_at_eigenvalues(Estar(mu), mu) == Estar_principal(mu)))
                out.append(Check("integral-E", "integral form has coefficients in Z[q,t]", inst,
                                 lambda mu=mu: integral_E(mu).is_integral()))
                for i in range(1, n):
                    out.append(Check("E-T-action", "T_i E_mu exchange laws", _inst(inst, f"i={i}"),
                                     lambda mu=mu, i=i: t_action_law(mu, i)))
                    out.append(Check("E-T-span", "T_i E_mu lies in the span of E_mu, E_{s_i mu}",
                                     _inst(inst, f"i={i}"), lambda mu=mu, i=i: _t_span(mu, i)))
                if d <= operator_deg:
                    out.append(Check("Xi-eigen", "Xi_i E*_mu = mu-bar_i^-1 E*_mu", inst,
                                     lambda mu=mu: _xi_eigen(mu)))
                    out.append(Check("Xi-product", "prod Xi_i = q^-|mu| t^C(n,2)", inst,
                                     lambda mu=mu: _xi_product(mu)))
                    out.append(Check("Z-isomorphism", "z_i Edagger = q^|mu| Psi^-1 Z_i E*", inst,
                                     lambda mu=mu: _z_iso(mu)))
    return out


def _t_span(mu, i) -> bool:
    sw = mu[:i - 1] + (mu[i], mu[i - 1]) + mu[i + 1:]
    return set(expand_in_E(apply_T(i, E(mu)))) <= {tuple(mu), sw}


def _monic_triangular(mu) -> bool:
    f = E(mu)
    if f.coefficient(mu) != ONE or not f.is_homogeneous():
        return False
    return all(m == tuple(mu) or triangular_key(m) < triangular_key(mu) for m, _ in f.items())


def _xi_eigen(mu) -> bool:
    f = Estar(mu, "z")
    ev = eigenvalue_vector(mu, "z")
    return all(apply_Xi(i, f) == f.scale(ONE / ev[i - 1]) for i in range(1, len(mu) + 1))


def _xi_product(mu) -> bool:
    n = len(mu)
    f = g = Estar(mu, "z")
    for i in range(1, n + 1):
        g = apply_Xi(i, g)
    return g == f.scale(QtRational.monomial(-sum(mu), n * (n - 1) // 2))


def _z_iso(mu) -> bool:
    n = len(mu)
    f = Estar(mu, "z")
    lhs_base = Edagger(mu)
    for i in range(1, n + 1):
        z = apply_Z(i, f)
        if z != apply_Z_spectral(i, f):
            return False
        if SparsePolynomial.var(n, i) * lhs_base != Psi_inv(z).scale(QtRational.monomial(sum(mu), 0)):
            return False
    return True


# partial-symmetric structure ---------------------------------------------------

def partial_checks(max_n: int = 4, max_deg: int = 3) -> List[Check]:
    out: List[Check] = []
    for s in block_sweep(max_n, max_deg, min_n=1):
        lam, gamma = s.lam, s.gamma
        inst = _sc(s)
        out.append(Check("stability", "pi_1 P(lam,0|gamma) = P(lam|gamma)", inst,
                         lambda lam=lam, gamma=gamma: stability_check(lam, gamma)))
        out.append(Check("J-integrality", "J has coefficients in Z[q,t]", inst,
                         lambda lam=lam, gamma=gamma: J(lam, gamma).is_integral()))
        out.append(Check("j-zero-column", "j(lam,0|gamma) = j(lam|gamma)", inst,
                         lambda lam=lam, gamma=gamma: j_value(lam + (0,), gamma) == j_value(lam, gamma)))
        out.append(Check("j-box-route", "box-product j equals J/P", inst,
                         lambda lam=lam, gamma=gamma: j_value(lam, gamma, "box") == j_value(lam, gamma)))
        out.append(Check("f-routes", "closed and recursive f agree with the E expansion", inst,
                         lambda lam=lam, gamma=gamma: _f_routes(lam, gamma)))
    for n in range(1, max_n + 1):
        for d in range(max_deg + 1):
            for gamma in compositions(n, d):
                out.append(Check("J-specialization", "J(|gamma) equals the integral E", f"(|{gamma})",
                                 lambda gamma=gamma: J((), gamma) == integral_E(gamma)))
    return out


def _f_routes(lam, gamma) -> bool:
    coeffs = expand_in_E(P(lam, gamma))
    for mu in orbit(lam):
        v = f_closed(mu, lam, gamma)
        if v != f_recursive(mu, lam, gamma) or v != coeffs.get(tuple(mu) + tuple(gamma)):
            return False
    return len(coeffs) == len(orbit(lam))


SUITES = {
    "golden": lambda a: golden_checks(),
    "pieri-sweep": lambda a: pieri_checks(a.max_n, a.max_deg),
    "j-oracle": lambda a: [c for c in pieri_checks(a.max_n, a.max_deg, j_oracle=True)
                           if c.identity == "pieri-J-oracle"],
    "xj-sweep": lambda a: xj_checks(a.max_n, a.max_deg),
    "hecke": lambda a: hecke_checks(a.seed),
    "structure": lambda a: structure_checks(min(a.max_n, 3), a.max_deg + 1),
    "partial": lambda a: partial_checks(a.max_n, a.max_deg),
}
