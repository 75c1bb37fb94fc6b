"""Demazure-Lusztig operators T_i (x-variables) and H_i (reversed z-variables)."""
from __future__ import annotations

import itertools
from typing import Sequence

from .multipoly import SparsePolynomial, linear_form
from .qtfield import ONE, q, t
from .shapes import minimal_word

TM1 = t - 1


class HeckeError(ValueError):
    pass


def _check_index(i: int, n: int):
    if not 1 <= i < n:
        raise HeckeError(f"operator index {i} out of range for n={n}")


def _diff_form(n: int, plus: int, minus: int) -> SparsePolynomial:
    return linear_form(n, {plus: ONE, minus: -ONE})


def apply_T(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """T_i f = t s_i f + (t-1) x_{i+1} (f - s_i f)/(x_{i+1} - x_i)."""
    n = f.n
    _check_index(i, n)
    sf = f.swap_vars(i)
    h = f - sf
    if h.is_zero():
        return f.scale(t)
    g = h.divide_exact(_diff_form(n, i + 1, i))
    return sf.scale(t) + (SparsePolynomial.var(n, i + 1) * g).scale(TM1)


def apply_H(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """H_i = a(z_i, z_{i+1}) + b(z_i, z_{i+1}) s_i with a(x,y) = (t-1)x/(x-y), b(x,y) = (x-ty)/(x-y)."""
    n = f.n
    _check_index(i, n)
    sf = f.swap_vars(i)
    zi, zj = SparsePolynomial.var(n, i), SparsePolynomial.var(n, i + 1)
    num = (zi * f).scale(TM1) + (zi - zj.scale(t)) * sf
    return num.divide_exact(zi - zj)


def apply_Hbar(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """Hbar_i = (t-1) z_{i+1}/(z_i - z_{i+1}) + (z_i - t z_{i+1})/(z_i - z_{i+1}) s_i."""
    n = f.n
    _check_index(i, n)
    sf = f.swap_vars(i)
    zi, zj = SparsePolynomial.var(n, i), SparsePolynomial.var(n, i + 1)
    num = (zj * f).scale(TM1) + (zi - zj.scale(t)) * sf
    return num.divide_exact(zi - zj)


_OPS = {"T": apply_T, "H": apply_H, "Hbar": apply_Hbar}


def apply_word(word: Sequence[int], f: SparsePolynomial, convention: str = "T") -> SparsePolynomial:
    """Apply O_{i1} ... O_{il} to f; the rightmost letter acts first."""
    try:
        op = _OPS[convention]
    except KeyError:
        raise HeckeError(f"unknown convention {convention!r}") from None
    for i in reversed(list(word)):
        f = op(i, f)
    return f


def block_words(m: int, offset: int = 0):
    """Reduced words of all elements of the symmetric group on positions offset+1..offset+m."""
    base = tuple(range(m))
    for perm in itertools.permutations(base):
        yield tuple(a + offset for a in minimal_word(base, perm))


def _block(n: int, k: int, convention: str):
    if not 0 <= k <= n:
        raise HeckeError(f"need 0 <= k <= n, got n={n}, k={k}")
    m = n - k
    if convention == "T":
        return m, 0
    if convention == "H":
        return m, k
    raise HeckeError(f"unknown convention {convention!r}")


def symmetrize_e_plus(f: SparsePolynomial, n: int, k: int, convention: str = "T",
                      method: str = "coset") -> SparsePolynomial:
    """e^+ f = sum over the block group of T_w f (or H_w f in z-variables).

    method "naive" sums T_w f over reduced words of every group element;
    "coset" factors the sum through minimal left coset representatives of S_{m-1}.
    """
    if f.n != n:
        raise HeckeError("polynomial lives in the wrong number of variables")
    m, offset = _block(n, k, convention)
    op = _OPS[convention]
    if m <= 1:
        return f
    if method == "naive":
        out = SparsePolynomial.zero(n)
        for w in block_words(m, offset):
            out = out + apply_word(w, f, convention)
        return out
    if method != "coset":
        raise HeckeError(f"unknown method {method!r}")
    g = f
    for top in range(2, m + 1):
        # sum_{S_top} T_w = (1 + T_{top-1} + T_{top-2}T_{top-1} + ... + T_1...T_{top-1}) sum_{S_{top-1}} T_w
        acc = g
        for j in range(1, top):
            cur = g
            for letter in range(top - 1, j - 1, -1):
                cur = op(letter + offset, cur)
            acc = acc + cur
        g = acc
    return g


def convention_map(f: SparsePolynomial, invert_qt: bool = False) -> SparsePolynomial:
    """x_i <-> z_{n+1-i}.

    Under this reversal T_i corresponds to H_{n-i}.  The optional (q,t) ->
    (1/q, 1/t) substitution relabels parameters; it does not commute with the
    operator dictionary and is off by default.
    """
    g = f.reverse_vars()
    if invert_qt:
        g = g.map_coefficients(lambda c: c.invert_qt())
    return g


def e1(n: int, m: int) -> SparsePolynomial:
    """x_1 + ... + x_m in n variables."""
    return linear_form(n, {i: ONE for i in range(1, m + 1)})


__all__ = ["apply_T", "apply_H", "apply_Hbar", "apply_word", "symmetrize_e_plus",
           "convention_map", "block_words", "e1", "HeckeError", "q", "t"]
