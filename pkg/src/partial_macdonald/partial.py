"""Partially-symmetric Macdonald polynomials P_(lambda|gamma) and integral forms."""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

from .hecke import apply_word, symmetrize_e_plus
from .multipoly import SparsePolynomial
from .nonsym import E, expand_in_E, integral_E
from .qtfield import ONE, ZERO, QtRational, as_qt, qt_prod, t
from .shapes import (Box, Composition, SplitComposition, apply_reflection, arm,
                     arm_tilde, diagram, inversions, is_partition, leg,
                     minimal_word, orbit, poincare_W, rearrange)


class PartialError(ValueError):
    pass


class ProportionalityError(ArithmeticError):
    """The integral form is not a scalar multiple of P."""


@dataclass
class ExpansionVector:
    """Coefficients of a polynomial in a basis family ("E", "P", "J", "Estar")."""

    basis: str
    coefficients: Dict[object, QtRational] = field(default_factory=dict)

    def __post_init__(self):
        self.coefficients = {k: as_qt(v) for k, v in self.coefficients.items() if not as_qt(v).is_zero()}

    def __getitem__(self, key):
        return self.coefficients.get(key, ZERO)

    def keys(self):
        return self.coefficients.keys()

    def items(self):
        return sorted(self.coefficients.items(), key=lambda kv: _key_order(kv[0]))

    def __len__(self):
        return len(self.coefficients)

    def to_records(self):
        out = []
        for key, c in self.items():
            k = key.to_json() if isinstance(key, SplitComposition) else list(key)
            out.append({"key": k, "coefficient": str(c)})
        return out


def _key_order(key):
    if isinstance(key, SplitComposition):
        return (key.lam, key.gamma)
    return tuple(key)


def _check_lambda(lam: Sequence[int]):
    if not is_partition(lam):
        raise PartialError(f"lambda={tuple(lam)} must be weakly decreasing")


_P_CACHE: Dict[Tuple[Composition, Composition], SparsePolynomial] = {}
_P_LOCK = threading.RLock()


def P(lam: Sequence[int], gamma: Sequence[int]) -> SparsePolynomial:
    """P_(lambda|gamma) = e^+ E_(lambda|gamma) / W_lambda(t)."""
    lam, gamma = tuple(lam), tuple(gamma)
    _check_lambda(lam)
    key = (lam, gamma)
    with _P_LOCK:
        if key in _P_CACHE:
            return _P_CACHE[key]
    n, k = len(lam) + len(gamma), len(gamma)
    top = symmetrize_e_plus(E(lam + gamma), n, k)
    res = top.scale(ONE / QtRational(poincare_W(lam)))
    with _P_LOCK:
        _P_CACHE[key] = res
    return res


def P_coset(lam: Sequence[int], gamma: Sequence[int]) -> SparsePolynomial:
    """P as the sum of T_w E over minimal coset representatives of Stab(lambda)."""
    lam, gamma = tuple(lam), tuple(gamma)
    _check_lambda(lam)
    base = E(lam + gamma)
    n = len(lam) + len(gamma)
    out = SparsePolynomial.zero(n)
    for mu in orbit(lam):
        out = out + apply_word(minimal_word(lam, mu), base)
    return out


def _box_factor(nu, b, leg_shift: int, arm_fn, arm_shift: int) -> QtRational:
    return ONE - QtRational.monomial(leg(nu, b) + leg_shift, arm_fn(nu, b) + arm_shift)


def f_closed(mu: Sequence[int], lam: Sequence[int], gamma: Sequence[int]) -> QtRational:
    """Coefficient of E_(mu|gamma) in P_(lambda|gamma), closed form.

    t^{l(w_mu)} prod_{dg(lambda^-|gamma)} (1 - q^{leg+1} t^{arm}) / prod_{dg(mu|gamma)} (same).
    """
    mu, lam, gamma = tuple(mu), tuple(lam), tuple(gamma)
    if sorted(mu) != sorted(lam):
        raise PartialError(f"{mu} is not in the orbit of {lam}")
    lm = rearrange(lam, "increasing") + gamma
    nu = mu + gamma

    def prod(v):
        return qt_prod(_box_factor(v, b, 1, arm, 0) for b in diagram(v))
    return QtRational.monomial(0, inversions(mu)) * prod(lm) / prod(nu)


def f_recursive(mu: Sequence[int], lam: Sequence[int], gamma: Sequence[int]) -> QtRational:
    """Same coefficient through the one-step recursion starting from f_{lambda^-} = 1.

    For mu_i < mu_{i+1}: f_{s_i mu} = f_mu (t - q^{leg+1} t^{arm}) / (1 - q^{leg+1} t^{arm}),
    statistics of the box (i, mu_i + 1) in dg(s_i mu | gamma).
    """
    mu, lam, gamma = tuple(mu), tuple(lam), tuple(gamma)
    if sorted(mu) != sorted(lam):
        raise PartialError(f"{mu} is not in the orbit of {lam}")
    cur = rearrange(lam, "increasing")
    val = ONE
    for i in reversed(minimal_word(cur, mu)):
        nxt = apply_reflection(cur, i)
        if not cur[i - 1] < cur[i]:
            raise PartialError("non-reduced step in recursion")
        full = nxt + gamma
        b = Box(i, cur[i - 1] + 1)
        x = QtRational.monomial(leg(full, b) + 1, arm(full, b))
        val = val * (t - x) / (ONE - x)
        cur = nxt
    return val


def expand_P_in_E(lam: Sequence[int], gamma: Sequence[int]) -> ExpansionVector:
    return ExpansionVector("E", expand_in_E(P(lam, gamma)))


def _integral_prefactor(lam: Composition, gamma: Composition) -> QtRational:
    """prod over top boxes of the symmetric part of dg(lambda^-|gamma) of (1 - q^leg t^{arm~+1})."""
    lm = rearrange(lam, "increasing")
    nu = lm + gamma
    return qt_prod(ONE - QtRational.monomial(leg(nu, (i, h)), arm_tilde(nu, (i, h)) + 1)
                   for i, h in enumerate(lm, start=1) if h > 0)


def J(lam: Sequence[int], gamma: Sequence[int]) -> SparsePolynomial:
    """Integral form, built literally as the prefactor times a coset sum of T_w applied to
    curly-E_(lambda|gamma) / prod_{first-row lambda boxes} (1 - q^{leg+1} t^{arm+1})."""
    lam, gamma = tuple(lam), tuple(gamma)
    _check_lambda(lam)
    nu = lam + gamma
    denom = qt_prod(ONE - QtRational.monomial(leg(nu, (i, 1)) + 1, arm(nu, (i, 1)) + 1)
                    for i in range(1, len(lam) + 1) if lam[i - 1] > 0)
    inner = integral_E(nu).scale(ONE / denom)
    total = SparsePolynomial.zero(len(nu))
    for mu in orbit(lam):
        total = total + apply_word(minimal_word(lam, mu), inner)
    return total.scale(_integral_prefactor(lam, gamma))


def proportionality(f: SparsePolynomial, g: SparsePolynomial) -> QtRational:
    """The scalar c with f = c g; raises ProportionalityError otherwise."""
    if g.is_zero():
        raise ProportionalityError("reference polynomial is zero")
    m, c0 = next(iter(g.items()))
    ratio = f.coefficient(m) / c0
    if f != g.scale(ratio):
        raise ProportionalityError("polynomials are not proportional")
    return ratio


def j_constant(lam: Sequence[int], gamma: Sequence[int]) -> QtRational:
    """j_(lambda|gamma) as the ratio J / P."""
    return proportionality(J(lam, gamma), P(lam, gamma))


def j_box_product(lam: Sequence[int], gamma: Sequence[int]) -> QtRational:
    """Direct diagram product over dg(lambda^-|gamma): symmetric boxes contribute
    (1 - q^{leg} t^{arm~+1}), nonsymmetric boxes (1 - q^{leg+1} t^{arm+1})."""
    lm = rearrange(lam, "increasing")
    nu = lm + tuple(gamma)
    m = len(lm)
    out = ONE
    for b in diagram(nu):
        if b.i <= m:
            out = out * (ONE - QtRational.monomial(leg(nu, b), arm_tilde(nu, b) + 1))
        else:
            out = out * (ONE - QtRational.monomial(leg(nu, b) + 1, arm(nu, b) + 1))
    return out


def j_value(lam: Sequence[int], gamma: Sequence[int], route: str = "ratio") -> QtRational:
    if route == "ratio":
        return j_constant(lam, gamma)
    if route == "box":
        return j_box_product(lam, gamma)
    raise PartialError(f"unknown route {route!r}")


def stability_check(lam: Sequence[int], gamma: Sequence[int]) -> bool:
    """pi_1 P_(lambda,0|gamma) = P_(lambda|gamma)."""
    lam, gamma = tuple(lam), tuple(gamma)
    return P(lam + (0,), gamma).project_pi1() == P(lam, gamma)
