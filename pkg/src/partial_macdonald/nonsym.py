"""Nonsymmetric Macdonald polynomials E_mu and integral forms."""
from __future__ import annotations

import threading
from typing import Dict, Sequence

from .hecke import apply_T
from .interpolation import Estar
from .multipoly import SparsePolynomial
from .qtfield import ONE, ZERO, QtRational, qt_prod, t
from .shapes import Composition, arm, diagram, leg, triangular_key


class TriangularityError(ArithmeticError):
    """An E-basis expansion met a polynomial that is not triangular."""


_E_CACHE: Dict[Composition, SparsePolynomial] = {}
_E_LOCK = threading.RLock()


def E(mu: Sequence[int], convention: str = "x") -> SparsePolynomial:
    """E_mu in x-variables, or E-dagger_mu (reversed variables) for convention "z"."""
    mu = tuple(mu)
    if convention == "z":
        return E(mu[::-1], "x").reverse_vars()
    if convention != "x":
        raise ValueError(f"unknown convention {convention!r}")
    with _E_LOCK:
        p = _E_CACHE.get(mu)
        if p is None:
            p = _E_CACHE[mu] = Estar(mu, "x").top_homogeneous()
        return p


def _hecke_step_coefficient(nu: Sequence[int], i: int) -> QtRational:
    """(1-t)/(1 - q^{leg+1} t^{arm}) at box (i, nu_{i+1}+1) of dg(nu), nu_i > nu_{i+1}."""
    b = (i, nu[i] + 1)
    return (ONE - t) / (ONE - QtRational.monomial(leg(nu, b) + 1, arm(nu, b)))


_EI_CACHE: Dict[Composition, SparsePolynomial] = {}


def E_intertwiner(mu: Sequence[int]) -> SparsePolynomial:
    """E_mu from the raising operator and Hecke exchange steps.

    Raising: E_{(mu_n+1, mu_1, ..., mu_{n-1})} = q^{mu_n} x_1 E_mu(x_2, ..., x_n, x_1/q).
    Exchange: for nu_i > nu_{i+1}, E_{s_i nu} = T_i E_nu + (1-t)/(1-q^{leg+1}t^{arm}) E_nu.
    """
    mu = tuple(mu)
    n = len(mu)
    with _E_LOCK:
        if mu in _EI_CACHE:
            return _EI_CACHE[mu]
    if sum(mu) == 0:
        res = SparsePolynomial.one(n)
    else:
        asc = next((i for i in range(n - 1) if mu[i] < mu[i + 1]), None)
        if asc is not None:
            i = asc + 1
            nu = list(mu)
            nu[i - 1], nu[i] = nu[i], nu[i - 1]
            nu = tuple(nu)
            base = E_intertwiner(nu)
            res = apply_T(i, base) + base.scale(_hecke_step_coefficient(nu, i))
        else:
            # mu is weakly decreasing with mu_1 > 0
            prev = mu[1:] + (mu[0] - 1,)
            base = E_intertwiner(prev)

            def shift(m):
                # x^m evaluated at (x_2, ..., x_n, x_1/q), then times x_1
                e = (m[-1] + 1,) + m[:-1]
                return e, QtRational.monomial(-m[-1], 0)

            res = base.map_monomials(shift).scale(QtRational.monomial(prev[-1], 0))
    with _E_LOCK:
        _EI_CACHE[mu] = res
    return res


def expand_in_E(f: SparsePolynomial, convention: str = "x") -> Dict[Composition, QtRational]:
    """Coefficients c_nu with f = sum c_nu E_nu, by triangular elimination."""
    if convention == "z":
        return {nu[::-1]: c for nu, c in expand_in_E(f.reverse_vars(), "x").items()}
    out: Dict[Composition, QtRational] = {}
    rem = dict(f._terms)
    steps = 0
    limit = 10 * (len(rem) + 1) ** 2 + 1000
    while rem:
        nu = max(rem, key=triangular_key)
        c = rem[nu]
        out[nu] = out.get(nu, ZERO) + c
        for m, v in E(nu, "x")._terms.items():
            if m != nu and triangular_key(m) >= triangular_key(nu):
                raise TriangularityError(f"E_{nu} contains x^{m} above its leading term")
            w = rem.get(m, ZERO) - c * v
            if w.is_zero():
                rem.pop(m, None)
            else:
                rem[m] = w
        steps += 1
        if steps > limit:
            raise TriangularityError("E-basis expansion did not terminate")
    return {nu: c for nu, c in out.items() if not c.is_zero()}


def from_E_coefficients(coeffs: Dict[Composition, QtRational], n: int,
                        convention: str = "x") -> SparsePolynomial:
    out = SparsePolynomial.zero(n)
    for nu, c in coeffs.items():
        out = out + E(nu, convention).scale(c)
    return out


def integral_constant(gamma: Sequence[int]) -> QtRational:
    """prod over dg(gamma) of (1 - q^{leg+1} t^{arm+1})."""
    return qt_prod(ONE - QtRational.monomial(leg(gamma, b) + 1, arm(gamma, b) + 1) for b in diagram(gamma))


def integral_E(gamma: Sequence[int]) -> SparsePolynomial:
    """Integral form curly-E_gamma = prod (1 - q^{leg+1} t^{arm+1}) E_gamma."""
    return E(gamma).scale(integral_constant(gamma))
