"""Pieri rules for partially-symmetric Macdonald polynomials.

Multiplication of P_(lambda|gamma) by e_1[x_1..x_{n-k}] (and by a single
nonsymmetric variable x_j, j > n-k) expands in the P basis one degree up.
The coefficients are produced by three independent routes:

* the evaluation formula C (eigenvalue factors, f-ratio, E*-principal values),
* the cancelled integral-form formula A,
* a brute-force linear solve against the whole basis (``oracle_expand``).

The x_j coefficients come from pushing the operator Z~ through eigenvalue
points, either summed over every choice set (``route="index"``) or with
honest E* polynomial evaluation (``route="evaluation"``).  The one-push
certificates of ``xj_certificates`` reach only part of the support.

Positions are 1-based.  ``I1`` lists positions inside the nonsymmetric block
(1..k).  Eigenvalues are the x-convention vectors of interpolation.py.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .hecke import e1
from .interpolation import (Estar, Estar_principal, _eval_at_exponents, eigenvalue_vector,
                            solve_linear)
from .multipoly import SparsePolynomial
from .partial import J, P, ExpansionVector, f_closed, j_value
from .qtfield import ONE, ZERO, QtRational, q, qt_prod, t
from .shapes import (Composition, SplitComposition, arm, arm_tilde, leg,
                     lprime, orbit, rearrange, split_basis)

QINV = QtRational.monomial(-1, 0)


class PieriError(ValueError):
    pass


class OracleError(ArithmeticError):
    """The brute-force basis solve was singular or failed to reconstruct."""


@dataclass(frozen=True)
class PieriTerm:
    """One support element (mu|eta) with its certificate.

    ``lambda_tilde`` and ``mu_tilde`` are the evaluation arrangements of the
    symmetric parts: the entries not equal to the increased height c come
    first in increasing order, the columns of height c sit at the end, and
    lambda_tilde ends with the distinguished entry d that leaves lambda.
    """

    target: SplitComposition
    I1: Tuple[int, ...]
    lambda_tilde: Composition
    mu_tilde: Composition
    m: int
    h: int

    @property
    def distinguished(self) -> int:
        return self.lambda_tilde[-1]

    @property
    def increased(self) -> int:
        return self.mu_tilde[-1]

    def to_json(self) -> dict:
        return {
            "target": {"mu": list(self.target.lam), "eta": list(self.target.gamma)},
            "I1": list(self.I1),
            "lambda_tilde": list(self.lambda_tilde),
            "mu_tilde": list(self.mu_tilde),
            "m": self.m,
            "h": self.h,
        }


def _check_block(lam: Sequence[int], gamma: Sequence[int]):
    lam, gamma = tuple(lam), tuple(gamma)
    if not lam or not gamma:
        raise PieriError("Pieri rules need 0 < k < n")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise PieriError(f"lambda={lam} must be weakly decreasing")
    if any(v < 0 for v in lam + gamma):
        raise PieriError("negative entries")
    return lam, gamma


# support -------------------------------------------------------------------

def chain_eta(gamma: Sequence[int], I1: Sequence[int], d: int) -> Tuple[Composition, int]:
    """eta and the increased height for the chain d -> t_1 -> ... -> t_r -> (symmetric).

    eta_{t_1} = d, eta_{t_{u+1}} = gamma_{t_u}; gamma_{t_r} leaves the block
    and returns as a symmetric column of height gamma_{t_r} + 1.  With I1
    empty, eta = gamma and the column d itself grows to d + 1.
    """
    eta = list(gamma)
    if not I1:
        return tuple(eta), d + 1
    prev = d
    for tu in I1:
        eta[tu - 1], prev = prev, gamma[tu - 1]
    return tuple(eta), prev + 1


def is_maximal(gamma: Sequence[int], I1: Sequence[int], d: int) -> bool:
    """No skipped column repeats the height that jumps over it."""
    k = len(gamma)
    if not I1:
        return all(g != d for g in gamma)
    eta, c = chain_eta(gamma, I1, d)
    prev = 0
    for tu in I1:
        if any(eta[j - 1] == eta[tu - 1] for j in range(prev + 1, tu)):
            return False
        prev = tu
    return all(gamma[j - 1] != c - 1 for j in range(I1[-1] + 1, k + 1))


def make_term(lam: Sequence[int], gamma: Sequence[int], d: int, I1: Sequence[int]) -> PieriTerm:
    lam, gamma = tuple(lam), tuple(gamma)
    I1 = tuple(sorted(I1))
    if d not in lam:
        raise PieriError(f"{d} is not an entry of lambda={lam}")
    eta, c = chain_eta(gamma, I1, d)
    rest = list(lam)
    rest.remove(d)
    others = sorted(x for x in rest if x != c)
    m = rest.count(c)
    mu_tilde = tuple(others) + (c,) * (m + 1)
    lambda_tilde = tuple(others) + (c,) * m + (d,)
    mu = rearrange(mu_tilde, "decreasing")
    return PieriTerm(SplitComposition(mu, eta), I1, lambda_tilde, mu_tilde, m, len(lam) - m)


def support_set(lam: Sequence[int], gamma: Sequence[int]) -> List[PieriTerm]:
    """All (mu|eta) receiving a nonzero coefficient in e_1[x_1..x_{n-k}] P_(lam|gamma)."""
    lam, gamma = _check_block(lam, gamma)
    k = len(gamma)
    seen: Dict[SplitComposition, PieriTerm] = {}
    for d in sorted(set(lam)):
        for r in range(k + 1):
            for I1 in itertools.combinations(range(1, k + 1), r):
                if not is_maximal(gamma, I1, d):
                    continue
                term = make_term(lam, gamma, d, I1)
                if term.target in seen:
                    raise PieriError(f"two certificates for {term.target}")
                seen[term.target] = term
    return sorted(seen.values(), key=lambda tm: (tm.target.lam, tm.target.gamma))


def find_term(lam, gamma, target: SplitComposition) -> PieriTerm:
    for term in support_set(lam, gamma):
        if term.target == target:
            return term
    raise PieriError(f"{target} is not in the support of ({tuple(lam)}|{tuple(gamma)})")


# index actions in reversed variables --------------------------------------------

def I1_action(z: Sequence, k: int, I1: Sequence[int]) -> tuple:
    """(I_1 z) in reversed variables; the t_1 slot (or k+1 when I1 is empty) gets q^{-1} z_n."""
    n = len(z)
    I1 = sorted(I1)
    out = []
    for m in range(1, n + 1):
        if m <= k and m not in I1:
            out.append(z[m - 1])
        elif I1 and m == I1[0]:
            out.append(QINV * z[n - 1])
        elif m in I1:
            out.append(z[I1[I1.index(m) - 1] - 1])
        elif m == k + 1:
            out.append(z[I1[-1] - 1] if I1 else QINV * z[n - 1])
        else:
            out.append(z[m - 2])
    return tuple(out)


def I2_action(z: Sequence, k: int, I2: Sequence[int], j: int) -> tuple:
    """(I_2 z): the cycle structure of s_j ... s_{n-1} with the I2 letters removed."""
    n = len(z)
    I2 = sorted(I2)
    out = []
    for m in range(1, n + 1):
        if m <= k:
            out.append(z[m - 1])
        elif m == n:
            out.append(z[(I2[-1] + 1 if I2 else j) - 1])
        elif I2 and m == I2[0] + 1:
            out.append(z[j - 1])
        elif m - 1 in I2:
            out.append(z[I2[I2.index(m - 1) - 1]])
        else:
            out.append(z[m])
    return tuple(out)


def _check_sets(k: int, n: int, I1, I2, j):
    if not k + 1 <= j <= n:
        raise PieriError(f"j={j} outside [k+1, n]")
    if any(not 1 <= x <= k for x in I1):
        raise PieriError("I1 must lie in [1,k]")
    if any(not j <= x <= n - 1 for x in I2):
        raise PieriError("I2 must lie in [j, n-1]")


def d_I_apply(nu: Sequence[int], k: int, I1: Sequence[int], I2: Sequence[int], j: int) -> Composition:
    """The composition action d_I on a reversed-order composition (gamma|nu).

    Inverse to the eigenvalue action: I1(I2(bar(d_I nu))) = bar(nu) whenever
    no swap exchanges two equal heights (for support terms: whenever m = 0).
    """
    nu = tuple(nu)
    n = len(nu)
    I1, I2 = sorted(I1), sorted(I2)
    _check_sets(k, n, I1, I2, j)
    bumped = (nu[I1[0] - 1] if I1 else nu[k]) + 1
    out = []
    for m in range(1, n + 1):
        if m <= k:
            if m not in I1:
                out.append(nu[m - 1])
            elif m == I1[-1]:
                out.append(nu[k])
            else:
                out.append(nu[I1[I1.index(m) + 1] - 1])
        elif m < j:
            out.append(nu[m])
        elif (I2 and m == I2[-1] + 1) or (not I2 and m == j):
            out.append(bumped)
        elif m == j:
            out.append(nu[I2[0]])
        elif m - 1 in I2:
            out.append(nu[I2[I2.index(m - 1) + 1]])
        else:
            out.append(nu[m - 1])
    return tuple(out)


def d_I_prime_apply(nu: Sequence[int], k: int, j: int, I1p: Sequence[int], I3p: Sequence[int],
                    m: int) -> Composition:
    """Composition action for x_j multiplication (reversed order, j in [1,k]).

    The chain runs y_c+1 -> ... -> y_1+1 -> j -> t_r -> ... -> t_1 and the
    height at t_1 (or j when I1p is empty) returns at k+m+1 increased by one.
    """
    nu = tuple(nu)
    n = len(nu)
    I1p, I3p = sorted(I1p), sorted(I3p)
    if not 1 <= j <= k:
        raise PieriError(f"j={j} outside [1,k]")
    if any(not 1 <= x <= j - 1 for x in I1p) or any(not j <= x <= k for x in I3p):
        raise PieriError("malformed index sets")
    if not 0 <= m <= n - k - 1:
        raise PieriError("m out of range")
    chain_top = nu[I3p[0]] if I3p else nu[k]
    bumped = (nu[I1p[0] - 1] if I1p else nu[j - 1]) + 1
    out = []
    for ell in range(1, n + 1):
        if ell < j:
            if ell not in I1p:
                out.append(nu[ell - 1])
            elif ell == I1p[-1]:
                out.append(nu[j - 1])
            else:
                out.append(nu[I1p[I1p.index(ell) + 1] - 1])
        elif ell == j:
            out.append(chain_top)
        elif ell <= k:
            if ell - 1 not in I3p:
                out.append(nu[ell - 1])
            elif ell - 1 == I3p[-1]:
                out.append(nu[k])
            else:
                out.append(nu[I3p[I3p.index(ell - 1) + 1]])
        elif ell <= k + m:
            out.append(nu[ell])
        elif ell == k + m + 1:
            out.append(bumped)
        else:
            out.append(nu[ell - 1])
    return tuple(out)


# coefficient formulas ----------------------------------------------------------

@dataclass(frozen=True)
class _Ctx:
    n: int
    k: int
    lam: Composition
    gamma: Composition
    term: PieriTerm
    bar_l: Tuple[QtRational, ...]   # eigenvalues of (lambda~|gamma)
    bar_m: Tuple[QtRational, ...]   # eigenvalues of (mu~|eta)

    @property
    def M(self) -> QtRational:
        return self.bar_m[self.term.h - 1]

    def eta_bar(self, j: int) -> QtRational:
        return self.bar_m[self.n - self.k + j - 1]


def _ctx(lam, gamma, term: PieriTerm) -> _Ctx:
    lam, gamma = tuple(lam), tuple(gamma)
    return _Ctx(len(lam) + len(gamma), len(gamma), lam, gamma, term,
                eigenvalue_vector(term.lambda_tilde + gamma),
                eigenvalue_vector(term.mu_tilde + term.target.gamma))


def _b(x: QtRational, y: QtRational) -> QtRational:
    return (x - t * y) / (x - y)


def _p_I1(c: _Ctx, modified: bool) -> QtRational:
    I1, k = c.term.I1, c.k
    qM = QINV * c.M
    eb = c.eta_bar
    if not I1:
        return qt_prod((t * qM - eb(j)) / (qM - eb(j)) if modified else _b(qM, eb(j))
                       for j in range(1, k + 1))
    r = len(I1)
    val = (t - ONE) * qM / (qM - eb(I1[-1]))
    for u in range(r - 1):
        x, y = eb(I1[u + 1]), eb(I1[u])
        val = val * (t - ONE) * x / (x - y)
    for j in range(I1[-1] + 1, k + 1):
        val = val * ((t * qM - eb(j)) / (qM - eb(j)) if modified else _b(qM, eb(j)))
    prev = 0
    for tu in I1:
        x = eb(tu)
        for j in range(prev + 1, tu):
            val = val * ((t * x - eb(j)) / (x - eb(j)) if modified else _b(x, eb(j)))
        prev = tu
    return val


def p_I1(lam, gamma, term: PieriTerm) -> QtRational:
    return _p_I1(_ctx(lam, gamma, term), False)


def p_prime(lam, gamma, term: PieriTerm) -> QtRational:
    """p_{I1} with the skipped-column factors flipped to their cancelled form."""
    return _p_I1(_ctx(lam, gamma, term), True)


def _p2(c: _Ctx) -> QtRational:
    m, h, n = c.term.m, c.term.h, c.n
    geom = (ONE - t ** (m + 1)) / (ONE - t)
    val = geom * (c.M - QtRational.monomial(0, 1 - n))
    for j in range(1, h):
        val = val * _b(c.M, c.bar_m[j - 1])
    return val


def p_2(lam, gamma, term: PieriTerm) -> QtRational:
    return _p2(_ctx(lam, gamma, term))


def f_ratio(lam, gamma, term: PieriTerm) -> QtRational:
    return (f_closed(term.lambda_tilde, lam, gamma)
            / f_closed(term.mu_tilde, term.target.lam, term.target.gamma))


def estar_ratio(gamma, term: PieriTerm) -> QtRational:
    gamma = tuple(gamma)
    return Estar_principal(term.lambda_tilde + gamma) / Estar_principal(term.mu_tilde + term.target.gamma)


def pieri_C(lam, gamma, term: PieriTerm) -> QtRational:
    """Coefficient of P_(mu|eta) in e_1[x_1..x_{n-k}] P_(lam|gamma)."""
    lam, gamma = _check_block(lam, gamma)
    c = _ctx(lam, gamma, term)
    return (f_ratio(lam, gamma, term) * c.bar_l[c.n - c.k - 1] * _p_I1(c, False) * _p2(c)
            * estar_ratio(gamma, term))


def j_ratio(lam, gamma, term: PieriTerm, route: str = "box") -> QtRational:
    tg = term.target
    return j_value(lam, gamma, route) / j_value(tg.lam, tg.gamma, route)


def pieri_J(lam, gamma, term: PieriTerm, route: str = "box") -> QtRational:
    """Coefficient of J_(mu|eta) in e_1 J_(lam|gamma): C times the j-ratio."""
    return pieri_C(lam, gamma, term) * j_ratio(lam, gamma, term, route)


def _row_boxes(nu: Sequence[int], cols: Sequence[int], row: int):
    return [(i, row) for i in cols if nu[i - 1] >= row]


def f_remnant(lam, gamma, term: PieriTerm) -> QtRational:
    """prod over row d+1 of the symmetric part of (lam^-|gamma) of (t - q^{l+1}t^{a+1})/(1 - q^{l+1}t^{a+1})."""
    lm = rearrange(lam, "increasing")
    nu = lm + tuple(gamma)
    out = ONE
    for b in _row_boxes(nu, range(1, len(lm) + 1), term.distinguished + 1):
        x = QtRational.monomial(leg(nu, b) + 1, arm(nu, b) + 1)
        out = out * (t - x) / (ONE - x)
    return out


def _moved_column(lam) -> int:
    """Position in lam^- of the rightmost column of each height (as a dict)."""
    lm = rearrange(lam, "increasing")
    return {h: i + 1 for i, h in enumerate(lm)}


def j2_factor(lam, gamma, term: PieriTerm, corrected: bool = True) -> QtRational:
    """One-diagram form of the contribution of the column of height d to the j-ratio.

    With ``corrected`` the t-exponent of row i = c gains one: the new
    symmetric column of height c sits in that box's arm.
    """
    lm = rearrange(lam, "increasing")
    nu = lm + tuple(gamma)
    p = _moved_column(lam)[term.distinguished]
    eta = term.target.gamma
    out = ONE
    for i in range(1, term.distinguished + 1):
        b = (p, i)
        at = arm_tilde(nu, b)
        out = out * (ONE - QtRational.monomial(leg(nu, b), at + 1)) / (
            ONE - QtRational.monomial(leg(nu, b) + 1, at + 1 + eta.count(i - 1)
                                      + (corrected and i == term.increased)))
    return out


def simplified_A(lam, gamma, term: PieriTerm) -> QtRational:
    """Fully cancelled coefficient of J_(mu|eta) in e_1 J_(lam|gamma)."""
    lam, gamma = _check_block(lam, gamma)
    c = _ctx(lam, gamma, term)
    return (f_remnant(lam, gamma, term) * j2_factor(lam, gamma, term) * _p_I1(c, True)
            / (ONE - t) * QtRational.monomial(1 - term.increased, 0) * c.bar_l[c.n - c.k - 1])


# brute-force oracle ------------------------------------------------------------

def _basis_poly(basis: str, s: SplitComposition) -> SparsePolynomial:
    if basis == "P":
        return P(s.lam, s.gamma)
    if basis == "J":
        return J(s.lam, s.gamma)
    raise PieriError(f"unknown basis {basis!r}")


def oracle_expand(product: SparsePolynomial, n: int, k: int, basis: str = "P") -> ExpansionVector:
    """Expand a block-symmetric homogeneous polynomial in the P (or J) basis by a full solve.

    Rows are the antidominant monomials x^(lam^-|gamma); after solving, the
    combination is rebuilt and compared with the input.
    """
    if product.n != n:
        raise PieriError("polynomial lives in the wrong number of variables")
    if product.is_zero():
        return ExpansionVector(basis, {})
    if not product.is_homogeneous():
        raise PieriError("oracle_expand needs a homogeneous polynomial")
    d = product.degree()
    elems = split_basis(n, k, d)
    polys = [_basis_poly(basis, s) for s in elems]
    rows = [s.antidominant().full for s in elems]
    matrix = [[p.coefficient(r) for p in polys] for r in rows]
    rhs = [product.coefficient(r) for r in rows]
    try:
        sol = solve_linear(matrix, rhs)
    except ArithmeticError as exc:
        raise OracleError(f"basis defect at n={n}, k={k}, degree {d}") from exc
    rebuilt = SparsePolynomial.zero(n)
    for c, p in zip(sol, polys):
        if not c.is_zero():
            rebuilt = rebuilt + p.scale(c)
    if rebuilt != product:
        raise OracleError("reconstruction failed: input is not in the span of the basis")
    return ExpansionVector(basis, {s: c for s, c in zip(elems, sol) if not c.is_zero()})


def e1_product(lam, gamma, basis: str = "P") -> SparsePolynomial:
    lam, gamma = _check_block(lam, gamma)
    n, k = len(lam) + len(gamma), len(gamma)
    base = P(lam, gamma) if basis == "P" else J(lam, gamma)
    return e1(n, n - k) * base


def xj_product(lam, gamma, j: int) -> SparsePolynomial:
    lam, gamma = _check_block(lam, gamma)
    n, k = len(lam) + len(gamma), len(gamma)
    if not n - k < j <= n:
        raise PieriError(f"x_{j} is not a nonsymmetric variable for n={n}, k={k}")
    return SparsePolynomial.var(n, j) * P(lam, gamma)


# cancellation groups -------------------------------------------------------------

@dataclass(frozen=True)
class GroupFactors:
    """The j-ratio and E*-ratio of a Pieri term split into box groups.

    ``j1`` .. ``j5`` multiply to the j-ratio; q^{1-2c} t^{l'(h)} e1 e3 e4 e5
    is the E*-ratio.  ``a0`` is the arm of the virtual row-0 box at h.
    """

    j1: QtRational
    j2: QtRational
    j3: QtRational
    j4: QtRational
    j5: QtRational
    e1: QtRational
    e3: QtRational
    e4: QtRational
    e5: QtRational
    a0: int


def _m(a: int, b: int) -> QtRational:
    return QtRational.monomial(a, b)


def chain_passes(term: PieriTerm) -> Dict[Tuple[int, int], int]:
    """Arm corrections in (mu~|eta) caused by chain heights jumping over skipped columns."""
    N, eta = len(term.target.lam), term.target.gamma
    delta: Counter = Counter()
    prev = 0
    for tu in term.I1:
        x = eta[tu - 1]
        for j in range(prev + 1, tu):
            y = eta[j - 1]
            if x < y:
                delta[(N + j, x + 1)] += 1
            elif x > y:
                delta[(N + tu, y + 1)] -= 1
        prev = tu
    return {b: v for b, v in delta.items() if v}


def _row0_arm(mt: Sequence[int], h: int, c: int) -> int:
    # zero columns left of h count when they do not exceed c
    return (sum(1 for r in range(h - 1) if 0 <= mt[r] <= c)
            + sum(1 for r in range(h, len(mt)) if mt[r] < c))


def group_factors(lam, gamma, term: PieriTerm) -> GroupFactors:
    lam, gamma = _check_block(lam, gamma)
    N, k = len(lam), len(gamma)
    eta, c, h = term.target.gamma, term.increased, term.h
    mt = term.mu_tilde + eta
    bm = rearrange(term.target.lam, "increasing") + eta
    tr = term.I1[-1] if term.I1 else 0
    g = Counter(eta[i - 1] for i in range(tr + 1, k + 1))

    first_c = bm.index(c) + 1
    j1 = qt_prod((ONE - _m(leg(bm, b), arm_tilde(bm, b))) / (ONE - _m(leg(bm, b), arm_tilde(bm, b) + 1))
                 for b in ((i, c) for i in range(1, N + 1) if bm[i - 1] >= c and i != first_c))
    j3 = e3 = ONE
    for b, dl in chain_passes(term).items():
        l, a = leg(mt, b), arm(mt, b)
        j3 = j3 * (ONE - _m(l + 1, a - dl + 1)) / (ONE - _m(l + 1, a + 1))
        e3 = e3 * (ONE - _m(-(l + 1), -(a - dl))) / (ONE - _m(-(l + 1), -a))
    g4 = [(N + i, c) for i in range(tr + 1, k + 1) if eta[i - 1] >= c]
    j4 = qt_prod((ONE - _m(leg(mt, b) + 1, arm(mt, b))) / (ONE - _m(leg(mt, b) + 1, arm(mt, b) + 1))
                 for b in g4)
    e4 = qt_prod((ONE - _m(-(leg(mt, b) + 1), 1 - arm(mt, b))) / (ONE - _m(-(leg(mt, b) + 1), -arm(mt, b)))
                 for b in g4)
    j5 = ONE / (ONE - t)
    e5 = ONE / (ONE - _m(-1, -arm(mt, (h, c))))
    for i in range(1, c):
        b = (h, i)
        l, at, a = leg(mt, b), arm_tilde(mt, b), arm(mt, b)
        j5 = j5 * (ONE - _m(l, at + 1 + g[i - 1])) / (ONE - _m(l, at + 1))
        e5 = e5 * (ONE - _m(-l, -(at + g[i - 1]))) / (ONE - _m(-(l + 1), -a))
    e1s = qt_prod((t - _m(leg(mt, b) + 1, arm(mt, b))) / (ONE - _m(leg(mt, b) + 1, arm(mt, b)))
                  for b in _row_boxes(mt, range(1, N + 1), c + 1))
    return GroupFactors(j1, j2_factor(lam, gamma, term), j3, j4, j5, e1s, e3, e4, e5,
                        _row0_arm(mt, h, c))


def cancellation_identities(lam, gamma, term: PieriTerm) -> Dict[str, bool]:
    """Check every intermediate identity used to cancel C * j-ratio down to A."""
    lam, gamma = _check_block(lam, gamma)
    G = group_factors(lam, gamma, term)
    cx = _ctx(lam, gamma, term)
    n, k, N = cx.n, cx.k, len(lam)
    c, h, m = term.increased, term.h, term.m
    mt = term.mu_tilde + term.target.gamma
    tr = term.I1[-1] if term.I1 else 0
    eb, M = cx.eta_bar, cx.M
    qM = QINV * M
    gs = Counter(term.mu_tilde)
    out = {}
    out["j-product"] = j_ratio(lam, gamma, term) == G.j1 * G.j2 * G.j3 * G.j4 * G.j5
    out["estar-product"] = (estar_ratio(gamma, term)
                            == _m(1 - 2 * c, lprime(mt, h)) * G.e1 * G.e3 * G.e4 * G.e5)

    lhs = rhs = ONE
    prev = 0
    for tu in term.I1:
        for j in range(prev + 1, tu):
            lhs = lhs * _b(eb(tu), eb(j))
            rhs = rhs * (t * eb(tu) - eb(j)) / (eb(tu) - eb(j))
        prev = tu
    out["skipped-columns"] = G.j3 * G.e3 * lhs == rhs

    tail = range(tr + 1, k + 1)
    lhs = G.j4 * G.j5 * G.e4 * G.e5 * qt_prod(_b(qM, eb(j)) for j in tail)
    rhs = (qt_prod((t * qM - eb(j)) / (qM - eb(j)) for j in tail)
           / (ONE - t) / (ONE - _m(-1, -arm(mt, (h, c)))))
    hook = ONE
    for i in range(1, c):
        b = (h, i)
        hook = hook * (ONE - _m(-leg(mt, b), -arm_tilde(mt, b))) / (ONE - _m(-(leg(mt, b) + 1), -arm(mt, b)))
    out["tail-columns"] = lhs == rhs * hook

    row0 = (ONE - _m(-c, gs[0] - G.a0)) / (ONE - _m(-c, -G.a0))
    shift = row0
    for s in range(1, c):
        b = (h, s)
        shift = shift * (ONE - _m(-leg(mt, b), gs[s] - arm_tilde(mt, b))) / (ONE - _m(-leg(mt, b), -arm_tilde(mt, b)))
    r1 = qt_prod((ONE - _m(1 + leg(mt, b), arm(mt, b) + 1)) / (ONE - _m(1 + leg(mt, b), arm(mt, b)))
                 for b in _row_boxes(mt, range(1, N + 1), c + 1))
    out["symmetric-prefix"] = qt_prod(_b(M, cx.bar_m[j - 1]) for j in range(1, h)) == r1 * shift
    out["hook-collapse"] = (ONE / (ONE - _m(-1, -arm(mt, (h, c)))) * hook * shift
                            == ONE / (ONE - _m(-c, -G.a0)))
    out["remnant"] = (M - _m(0, 1 - n)) / (ONE - _m(-c, -G.a0)) == _m(c, -lprime(mt, h))
    out["repeated-height"] = G.j1 * (ONE - t ** (m + 1)) / (ONE - t) * r1 == ONE
    return out


# x_j multiplication --------------------------------------------------------------
#
# Work in reversed variables z_i = x_{n+1-i}: position j of x becomes n+1-j,
# the nonsymmetric block occupies z_1..z_k and (lam|gamma) reads (rev gamma|rev lam).

def _zbar(nu: Sequence[int]) -> Tuple[QtRational, ...]:
    return eigenvalue_vector(nu, "z")


def ztilde_word(i: int, n: int) -> List[Tuple[str, int]]:
    """Z~_i = H_i ... H_{n-1} Phi H_1 ... H_{i-1}, outermost letter first."""
    return [("H", a) for a in range(i, n)] + [("Phi", 0)] + [("H", a) for a in range(1, i)]


def push_choice(word, chosen, point: Sequence[QtRational]):
    """Push a word through a point, keeping the a-branch of each H_i with i in ``chosen``.

    Returns (coefficient, final point).  Summing over all choice sets gives
    (word F)(point) for any F.
    """
    pt, coef = tuple(point), ONE
    n = len(pt)
    for kind, i in word:
        if kind == "Phi":
            coef = coef * (pt[-1] - _m(0, 1 - n))
            pt = (QINV * pt[-1],) + pt[:-1]
            continue
        x, y = pt[i - 1], pt[i]
        if i in chosen:
            coef = coef * (t - ONE) * x / (x - y)
        else:
            coef = coef * (x - t * y) / (x - y)
            pt = pt[:i - 1] + (y, x) + pt[i + 1:]
    return coef, pt


def _identify(point) -> Optional[Composition]:
    """The composition whose z-eigenvalue vector is ``point``, if any."""
    kap = []
    for p in point:
        if not p.is_monomial() or p.is_zero():
            return None
        try:
            kap.append(p.monomial_exponents()[0])
        except ArithmeticError:
            return None
    if min(kap) < 0:
        return None
    kap = tuple(kap)
    return kap if _zbar(kap) == tuple(point) else None


def _estar_z(nu: Composition, point) -> QtRational:
    if tuple(point) == _zbar(nu):
        return Estar_principal(nu[::-1])
    kap = _identify(point)
    if kap is not None and sum(kap) <= sum(nu):
        return ZERO
    exps = [p.monomial_exponents() for p in point[::-1]]
    return _eval_at_exponents(Estar(nu[::-1], "x"), exps)


def _eval_word(word, nu: Composition, point) -> QtRational:
    if not word:
        return _estar_z(nu, point)
    kind, i = word[0]
    n = len(point)
    if kind == "Phi":
        return (point[-1] - _m(0, 1 - n)) * _eval_word(word[1:], nu, (QINV * point[-1],) + tuple(point[:-1]))
    x, y = point[i - 1], point[i]
    sw = tuple(point[:i - 1]) + (y, x) + tuple(point[i + 1:])
    return ((t - ONE) * x / (x - y) * _eval_word(word[1:], nu, point)
            + (x - t * y) / (x - y) * _eval_word(word[1:], nu, sw))


def _xj_setup(lam, gamma, j):
    lam, gamma = _check_block(lam, gamma)
    n, k = len(lam) + len(gamma), len(gamma)
    if not n - k < j <= n:
        raise PieriError(f"x_{j} is not a nonsymmetric variable for n={n}, k={k}")
    return lam, gamma, n, k, n + 1 - j


def nonsym_D(lam, gamma, j: int, target: SplitComposition, route: str = "index",
                   arrangement: Optional[Sequence[int]] = None) -> QtRational:
    """Coefficient of P_target in x_j P_(lam|gamma).

    ``index`` sums, over every arrangement nu of lam and every choice set,
    the pushes of Z~ that land exactly on an eigenvalue point of (gamma|nu);
    only principal E* values enter.  ``evaluation`` evaluates the E*
    polynomials at every point the word visits.  Both normalise by an
    arrangement of the target's symmetric part (any one works).
    """
    lam, gamma, n, k, jB = _xj_setup(lam, gamma, j)
    if route not in ("index", "evaluation"):
        raise PieriError(f"unknown route {route!r}")
    arr = tuple(arrangement) if arrangement is not None else target.lam
    if sorted(arr) != sorted(target.lam):
        raise PieriError("arrangement is not a rearrangement of the target")
    gB = gamma[::-1]
    pt = _zbar(target.gamma[::-1] + arr[::-1])
    word = ztilde_word(jB, n)
    total = ZERO
    for nux in orbit(lam):
        nuB = gB + tuple(nux)[::-1]
        zb = _zbar(nuB)
        if route == "evaluation":
            v = _eval_word(word, nuB, pt)
        else:
            v = ZERO
            for r in range(n):
                for S in itertools.combinations(range(1, n), r):
                    coef, p2 = push_choice(word, S, pt)
                    if p2 == zb:
                        v = v + coef
            v = v * Estar_principal(nuB[::-1])
        if not v.is_zero():
            total = total + f_closed(nux, lam, gamma) * zb[jB - 1] * v
    return total / (f_closed(arr, target.lam, target.gamma) * Estar_principal(arr + target.gamma))


@dataclass(frozen=True)
class XjCertificate:
    """Single-term certificate (d, I1', I3') for a symmetric-landing x_j term (reversed positions)."""

    target: SplitComposition
    d: int
    I1p: Tuple[int, ...]
    I3p: Tuple[int, ...]
    m: int
    value: QtRational


def xj_certificates(lam, gamma, j: int) -> List[XjCertificate]:
    """Targets reached by one push with I2' = [k+1, k+m], the chain sets I1', I3' and c^m.

    This covers only terms where the returning height enters the symmetric
    block and one arrangement accounts for the whole coefficient.
    """
    lam, gamma, n, k, jB = _xj_setup(lam, gamma, j)
    gB = gamma[::-1]
    word = ztilde_word(jB, n)
    out: List[XjCertificate] = []
    for d in sorted(set(lam)):
        for r in range(jB):
            for I1p in itertools.combinations(range(1, jB), r):
                for s in range(k - jB + 2):
                    for I3p in itertools.combinations(range(jB, k + 1), s):
                        c = (gB[I1p[0] - 1] if I1p else gB[jB - 1]) + 1
                        rest = list(lam)
                        rest.remove(d)
                        m = rest.count(c)
                        nut = (d,) + (c,) * m + tuple(sorted((x for x in rest if x != c), reverse=True))
                        full = gB + nut
                        tgt = d_I_prime_apply(full, k, jB, I1p, I3p, m)
                        S = set(I1p) | set(range(k + 1, k + m + 1)) | set(I3p)
                        coef, pt = push_choice(word, S, _zbar(tgt))
                        if pt != _zbar(full):
                            continue
                        mut = tgt[k:]
                        target = SplitComposition(tuple(sorted(mut, reverse=True)), tgt[:k][::-1])
                        val = (f_closed(nut[::-1], lam, gamma) / f_closed(mut[::-1], target.lam, target.gamma)
                               * _zbar(full)[jB - 1] * coef
                               * Estar_principal(full[::-1]) / Estar_principal(tgt[::-1]))
                        out.append(XjCertificate(target, d, I1p, I3p, m, val))
    return out


def _xj_candidates(lam, gamma) -> List[SplitComposition]:
    # eigenpoints only move by permutation and one q^{-1} shift, so the content
    # of the target is that of (lam|gamma) with one entry raised by one
    n, k = len(lam) + len(gamma), len(gamma)
    base = sorted(tuple(lam) + tuple(gamma))
    wanted = {tuple(sorted(base[:i] + [base[i] + 1] + base[i + 1:])) for i in range(n)}
    return [s for s in split_basis(n, k, sum(base) + 1) if tuple(sorted(s.lam + s.gamma)) in wanted]


def xj_expand(lam, gamma, j: int, route: str = "index") -> ExpansionVector:
    """Full P-expansion of x_j P_(lam|gamma)."""
    lam, gamma, *_ = _xj_setup(lam, gamma, j)
    coeffs = {}
    for s in _xj_candidates(lam, gamma):
        v = nonsym_D(lam, gamma, j, s, route)
        if not v.is_zero():
            coeffs[s] = v
    return ExpansionVector("P", coeffs)
