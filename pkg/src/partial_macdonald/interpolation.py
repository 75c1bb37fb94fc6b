"""Interpolation (Knop-Sahi) polynomials E*_nu and their operator calculus.

Two variable conventions are used throughout:

* ``"x"``: our ordering.  Eigenvalues use l'_nu(i) = #{j<i | nu_j > nu_i} +
  #{j>i | nu_j >= nu_i} and the top component of E*_nu is E_nu.
* ``"z"``: the reversed ordering z_i = x_{n+1-i}.  E*^z_nu is E*^x of the
  reversed composition with reversed variables; the operators H_i, Delta,
  Phi, Xi act here.

E*^x_nu is computed by an exact interpolation solve: degree by degree, every
monomial x^kappa of degree d is first reduced by Newton interpolation against
the already known E*_tau of lower degree, and the resulting square system on
the degree-d nodes is solved by Gauss-Jordan elimination over Q(q,t).
"""
from __future__ import annotations

import threading
from math import comb
from typing import Dict, List, Sequence, Tuple

from .hecke import apply_H
from .multipoly import SparsePolynomial
from .qtfield import ONE, ZERO, QtRational, qt_prod, t
from .shapes import (Composition, arm, compositions, diagram, leg, lprime,
                     triangular_key)


class InterpolationError(ArithmeticError):
    """The interpolation system was singular or a vanishing condition failed."""


def _variant(convention: str) -> str:
    if convention not in ("x", "z"):
        raise ValueError(f"unknown convention {convention!r}")
    return convention


def eigen_exponents(nu: Sequence[int], convention: str = "x") -> Tuple[Tuple[int, int], ...]:
    """(q-exponent, t-exponent) of each eigenvalue entry q^{nu_i} t^{-l'(i)}."""
    v = _variant(convention)
    return tuple((nu[i - 1], -lprime(nu, i, v)) for i in range(1, len(nu) + 1))


def eigenvalue_vector(nu: Sequence[int], convention: str = "x") -> Tuple[QtRational, ...]:
    return tuple(QtRational.monomial(a, b) for a, b in eigen_exponents(nu, convention))


def _eval_at_exponents(f: SparsePolynomial, exps: Sequence[Tuple[int, int]]) -> QtRational:
    total = ZERO
    for m, c in f._terms.items():
        a = b = 0
        for e, (ea, eb) in zip(m, exps):
            if e:
                a += e * ea
                b += e * eb
        total = total + c * QtRational.monomial(a, b)
    return total


def evaluate_at_eigenvalues(f: SparsePolynomial, mu: Sequence[int], convention: str = "x") -> QtRational:
    return _eval_at_exponents(f, eigen_exponents(mu, convention))


def Estar_principal(nu: Sequence[int]) -> QtRational:
    """E*_nu(nu-bar) = (prod nu-bar_i^{nu_i}) prod_boxes (1 - q^{-(leg+1)} t^{-arm}), x-convention."""
    a = b = 0
    for (ea, eb), e in zip(eigen_exponents(nu, "x"), nu):
        a += e * ea
        b += e * eb
    head = QtRational.monomial(a, b)
    return head * qt_prod(ONE - QtRational.monomial(-(leg(nu, bx) + 1), -arm(nu, bx))
                          for bx in diagram(nu))


def gauss_jordan_inverse(matrix: List[List[QtRational]]) -> List[List[QtRational]]:
    """Exact inverse over Q(q,t); raises InterpolationError if singular."""
    n = len(matrix)
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        best = None
        for r in range(col, n):
            v = a[r][col]
            if not v.is_zero():
                size = len(v.numerator) + len(v.denominator)
                if best is None or size < best[0]:
                    best = (size, r)
        if best is None:
            raise InterpolationError("singular interpolation matrix")
        r = best[1]
        a[col], a[r] = a[r], a[col]
        inv = a[col][col].inverse()
        row = [x * inv if not x.is_zero() else x for x in a[col]]
        a[col] = row
        for rr in range(n):
            if rr == col:
                continue
            f = a[rr][col]
            if f.is_zero():
                continue
            target = a[rr]
            a[rr] = [x - f * y if not y.is_zero() else x for x, y in zip(target, row)]
    return [row[n:] for row in a]


def solve_linear(matrix: List[List[QtRational]], rhs: List[QtRational]) -> List[QtRational]:
    """Solve a square system exactly by Gaussian elimination with back substitution."""
    n = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        best = None
        for r in range(col, n):
            v = a[r][col]
            if not v.is_zero():
                size = len(v.numerator) + len(v.denominator)
                if best is None or size < best[0]:
                    best = (size, r)
        if best is None:
            raise InterpolationError("singular linear system")
        r = best[1]
        a[col], a[r] = a[r], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv if not x.is_zero() else x for x in a[col]]
        row = a[col]
        for rr in range(col + 1, n):
            f = a[rr][col]
            if f.is_zero():
                continue
            a[rr] = [x - f * y if not y.is_zero() else x for x, y in zip(a[rr], row)]
    sol = [ZERO] * n
    for i in range(n - 1, -1, -1):
        v = a[i][n]
        for j in range(i + 1, n):
            if not a[i][j].is_zero():
                v = v - a[i][j] * sol[j]
        sol[i] = v
    return sol


class _EstarStore:
    """Per-n cache of E*^x polynomials and their values at eigenvalue nodes."""

    def __init__(self, n: int):
        self.n = n
        self.polys: Dict[Composition, SparsePolynomial] = {}
        self.values: Dict[Tuple[Composition, Composition], QtRational] = {}
        self.done_degree = -1
        self.exps: Dict[Composition, Tuple[Tuple[int, int], ...]] = {}

    def node(self, mu):
        e = self.exps.get(mu)
        if e is None:
            e = self.exps[mu] = eigen_exponents(mu, "x")
        return e

    def value(self, tau: Composition, mu: Composition) -> QtRational:
        key = (tau, mu)
        v = self.values.get(key)
        if v is None:
            if sum(mu) <= sum(tau) and mu != tau:
                v = ZERO
            else:
                v = _eval_at_exponents(self.polys[tau], self.node(mu))
            self.values[key] = v
        return v

    def build_degree(self, d: int):
        n = self.n
        if d == 0:
            self.polys[(0,) * n] = SparsePolynomial.one(n)
            self.done_degree = 0
            return
        lower = [mu for e in range(d) for mu in compositions(n, e)]
        top = sorted(compositions(n, d), key=triangular_key)
        # Newton reduction of each degree-d monomial against the lower nodes
        newton: Dict[Composition, Dict[Composition, QtRational]] = {}
        for kappa in top:
            coeffs: Dict[Composition, QtRational] = {}
            for mu in lower:
                ea = eb = 0
                for e, (x, y) in zip(kappa, self.node(mu)):
                    ea += e * x
                    eb += e * y
                v = QtRational.monomial(ea, eb)
                for tau, c in coeffs.items():
                    if sum(tau) < sum(mu):
                        val = self.value(tau, mu)
                        if not val.is_zero():
                            v = v - c * val
                if not v.is_zero():
                    coeffs[mu] = v / self.value(mu, mu)
            newton[kappa] = coeffs
        # residual values on the degree-d nodes
        matrix = []
        for mu in top:
            row = []
            for kappa in top:
                ea = eb = 0
                for e, (x, y) in zip(kappa, self.node(mu)):
                    ea += e * x
                    eb += e * y
                v = QtRational.monomial(ea, eb)
                for tau, c in newton[kappa].items():
                    val = self.value(tau, mu)
                    if not val.is_zero():
                        v = v - c * val
                row.append(v)
            matrix.append(row)
        inv = gauss_jordan_inverse(matrix)
        for col, nu in enumerate(top):
            pivot = inv[col][col]
            if pivot.is_zero():
                raise InterpolationError(f"E*_{nu} is not monic at x^{nu}")
            c = {kappa: inv[r][col] / pivot for r, kappa in enumerate(top) if not inv[r][col].is_zero()}
            poly_terms: Dict[Composition, QtRational] = dict(c)
            low = SparsePolynomial.zero(n)
            lower_coeffs: Dict[Composition, QtRational] = {}
            for kappa, ck in c.items():
                for tau, e in newton[kappa].items():
                    lower_coeffs[tau] = lower_coeffs.get(tau, ZERO) + ck * e
            for tau, e in lower_coeffs.items():
                if not e.is_zero():
                    low = low + self.polys[tau].scale(e)
            self.polys[nu] = SparsePolynomial(n, poly_terms) - low
        self.done_degree = d


_STORES: Dict[int, _EstarStore] = {}
_LOCK = threading.RLock()


def _store(n: int, d: int) -> _EstarStore:
    with _LOCK:
        st = _STORES.get(n)
        if st is None:
            st = _STORES[n] = _EstarStore(n)
        while st.done_degree < d:
            st.build_degree(st.done_degree + 1)
        return st


def Estar(nu: Sequence[int], convention: str = "x") -> SparsePolynomial:
    """Interpolation polynomial E*_nu in the given variable convention."""
    nu = tuple(nu)
    if _variant(convention) == "z":
        return Estar(nu[::-1], "x").reverse_vars()
    st = _store(len(nu), sum(nu))
    return st.polys[nu]


def Estar_value(tau: Sequence[int], mu: Sequence[int]) -> QtRational:
    """E*^x_tau evaluated at the x-eigenvalue point of mu (cached)."""
    tau, mu = tuple(tau), tuple(mu)
    st = _store(len(tau), max(sum(tau), 0))
    with _LOCK:
        if sum(mu) > st.done_degree:
            return evaluate_at_eigenvalues(st.polys[tau], mu, "x")
        return st.value(tau, mu)


def check_vanishing(nu: Sequence[int], convention: str = "x") -> bool:
    """Direct evaluation of every vanishing condition and the nonvanishing at nu."""
    nu = tuple(nu)
    f = Estar(nu, convention)
    for d in range(sum(nu) + 1):
        for mu in compositions(len(nu), d):
            v = evaluate_at_eigenvalues(f, mu, convention)
            if (mu == nu) == v.is_zero():
                return False
    return True


# operators in z-variables ---------------------------------------------------

def apply_Delta(f: SparsePolynomial) -> SparsePolynomial:
    """Delta f = f(z_n/q, z_1, ..., z_{n-1})."""
    def fn(m):
        return m[1:] + m[:1], QtRational.monomial(-m[0], 0)
    return f.map_monomials(fn)


def apply_Phi(f: SparsePolynomial) -> SparsePolynomial:
    """Phi = (z_n - t^{-n+1}) Delta."""
    n = f.n
    lin = SparsePolynomial.var(n, n) - SparsePolynomial.constant(n, QtRational.monomial(0, 1 - n))
    return lin * apply_Delta(f)


def apply_Ztilde(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """H_i ... H_{n-1} Phi H_1 ... H_{i-1} f."""
    n = f.n
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range for n={n}")
    for j in range(i - 1, 0, -1):
        f = apply_H(j, f)
    f = apply_Phi(f)
    for j in range(n - 1, i - 1, -1):
        f = apply_H(j, f)
    return f


def apply_Xi(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """Xi_i = z_i^{-1} + z_i^{-1} Ztilde_i; the division by z_i is exact."""
    g = f + apply_Ztilde(i, f)
    return g.divide_exact(SparsePolynomial.var(f.n, i))


def expand_in_Estar(f: SparsePolynomial, convention: str = "z") -> Dict[Composition, QtRational]:
    """Coefficients of f in the E* basis (top-down by degree)."""
    from .nonsym import expand_in_E
    n = f.n
    out: Dict[Composition, QtRational] = {}
    rest = f
    while not rest.is_zero():
        top = rest.top_homogeneous()
        coeffs = expand_in_E(top, convention)
        for nu, c in coeffs.items():
            out[nu] = out.get(nu, ZERO) + c
            rest = rest - Estar(nu, convention).scale(c)
        if not rest.is_zero() and rest.degree() >= top.degree():
            raise InterpolationError("E* expansion failed to lower the degree")
    return {nu: c for nu, c in out.items() if not c.is_zero()}


def _from_Estar(coeffs: Dict[Composition, QtRational], n: int, convention: str) -> SparsePolynomial:
    out = SparsePolynomial.zero(n)
    for nu, c in coeffs.items():
        out = out + Estar(nu, convention).scale(c)
    return out


def apply_Xi_inverse(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """Xi_i^{-1} by eigenvalue multiplication in the E*^z basis."""
    coeffs = expand_in_Estar(f, "z")
    scaled = {nu: c * eigenvalue_vector(nu, "z")[i - 1] for nu, c in coeffs.items()}
    return _from_Estar(scaled, f.n, "z")


def apply_Z(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """Z_i = t^{-C(n,2)} Ztilde_i prod_{j != i} Xi_j."""
    n = f.n
    g = f
    for j in range(1, n + 1):
        if j != i:
            g = apply_Xi(j, g)
    return apply_Ztilde(i, g).scale(QtRational.monomial(0, -comb(n, 2)))


def apply_Z_spectral(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """Z_i through Xi_i^{-1} prod_j Xi_j realised by eigenvalue scaling on E*^z."""
    n = f.n
    coeffs = expand_in_Estar(f, "z")
    scaled = {}
    for nu, c in coeffs.items():
        ev = eigenvalue_vector(nu, "z")
        s = c
        for j in range(n):
            if j != i - 1:
                s = s / ev[j]
        scaled[nu] = s
    g = _from_Estar(scaled, n, "z")
    return apply_Ztilde(i, g).scale(QtRational.monomial(0, -comb(n, 2)))


def Edagger(nu: Sequence[int]) -> SparsePolynomial:
    """Top component of E*^z_nu: E of the reversed composition in reversed variables."""
    from .nonsym import E
    return E(tuple(nu)[::-1], "x").reverse_vars()


def Psi(f: SparsePolynomial) -> SparsePolynomial:
    """Linear map sending E-dagger_nu to E*^z_nu."""
    from .nonsym import expand_in_E
    out = SparsePolynomial.zero(f.n)
    for d in sorted({sum(m) for m in f._terms}):
        for nu, c in expand_in_E(f.homogeneous_component(d), "z").items():
            out = out + Estar(nu, "z").scale(c)
    return out


def Psi_inv(f: SparsePolynomial) -> SparsePolynomial:
    out = SparsePolynomial.zero(f.n)
    for nu, c in expand_in_Estar(f, "z").items():
        out = out + Edagger(nu).scale(c)
    return out
