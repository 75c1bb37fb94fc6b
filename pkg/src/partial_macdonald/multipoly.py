"""Sparse polynomials in n variables with Q(q,t) coefficients."""
from __future__ import annotations

import json
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .qtfield import ONE, ZERO, QtRational, as_qt, parse_qt

Monomial = Tuple[int, ...]


class PolynomialError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    """A division the theory guarantees to be exact left a remainder."""


def _grlex_key(m: Monomial):
    return (sum(m), m)


class SparsePolynomial:
    """Polynomial sum c_m x^m with QtRational coefficients.

    Instances are treated as immutable: every operation returns a new object.
    """

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Monomial, object] | None = None):
        self.n = n
        clean: Dict[Monomial, QtRational] = {}
        if terms:
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != n:
                    raise PolynomialError(f"monomial {m} has wrong length for n={n}")
                c = as_qt(c)
                if not c.is_zero():
                    clean[m] = c
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: Dict[Monomial, QtRational]) -> "SparsePolynomial":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "SparsePolynomial":
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> "SparsePolynomial":
        return cls._raw(n, {(0,) * n: ONE})

    @classmethod
    def constant(cls, n: int, c) -> "SparsePolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> "SparsePolynomial":
        """The variable x_i (1-based)."""
        if not 1 <= i <= n:
            raise PolynomialError(f"variable index {i} out of range for n={n}")
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): ONE})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=ONE) -> "SparsePolynomial":
        return cls(len(exponents), {tuple(exponents): coeff})

    # access ---------------------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, QtRational]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, QtRational]]:
        """Terms in descending graded-lex order."""
        for m in sorted(self._terms, key=_grlex_key, reverse=True):
            yield m, self._terms[m]

    def coefficient(self, m: Sequence[int]) -> QtRational:
        return self._terms.get(tuple(m), ZERO)

    def support(self) -> List[Monomial]:
        return [m for m, _ in self.items()]

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def homogeneous_component(self, d: int) -> "SparsePolynomial":
        return SparsePolynomial._raw(self.n, {m: c for m, c in self._terms.items() if sum(m) == d})

    def top_homogeneous(self) -> "SparsePolynomial":
        if not self._terms:
            raise PolynomialError("the zero polynomial has no top component")
        return self.homogeneous_component(self.degree())

    def is_integral(self) -> bool:
        """All coefficients lie in Z[q,t]."""
        return all(c.is_polynomial() for c in self._terms.values())

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "SparsePolynomial"):
        if other.n != self.n:
            raise PolynomialError(f"variable count mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(self.n, other)
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[m]
                else:
                    out[m] = v
        return SparsePolynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePolynomial._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePolynomial):
            other = SparsePolynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SparsePolynomial":
        c = as_qt(c)
        if c.is_zero():
            return SparsePolynomial.zero(self.n)
        if c.is_one():
            return self
        return SparsePolynomial._raw(self.n, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SparsePolynomial):
            return self.scale(other)
        self._check(other)
        out: Dict[Monomial, QtRational] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return SparsePolynomial._raw(self.n, {m: c for m, c in out.items() if not c.is_zero()})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        out = SparsePolynomial.one(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    # variable actions -----------------------------------------------------
    def map_monomials(self, fn: Callable[[Monomial], Tuple[Monomial, QtRational]],
                      n: int | None = None) -> "SparsePolynomial":
        """Apply a monomial substitution m -> c(m) * x^{m'} termwise."""
        n = self.n if n is None else n
        out: Dict[Monomial, QtRational] = {}
        for m, c in self._terms.items():
            m2, scale = fn(m)
            v = c * scale
            if m2 in out:
                v = out[m2] + v
            out[m2] = v
        return SparsePolynomial._raw(n, {m: c for m, c in out.items() if not c.is_zero()})

    def permute_vars(self, perm: Sequence[int]) -> "SparsePolynomial":
        """Substitute x_i -> x_{perm[i-1]} (perm 1-based)."""
        n = self.n
        def fn(m):
            e = [0] * n
            for i, a in enumerate(m):
                e[perm[i] - 1] += a
            return tuple(e), ONE
        return self.map_monomials(fn)

    def swap_vars(self, i: int) -> "SparsePolynomial":
        """The s_i action x_i <-> x_{i+1}."""
        if not 1 <= i < self.n:
            raise PolynomialError(f"swap index {i} out of range for n={self.n}")
        a = i - 1
        out = {}
        for m, c in self._terms.items():
            e = list(m)
            e[a], e[a + 1] = e[a + 1], e[a]
            out[tuple(e)] = c
        return SparsePolynomial._raw(self.n, out)

    def reverse_vars(self) -> "SparsePolynomial":
        """x_i -> x_{n+1-i}."""
        return SparsePolynomial._raw(self.n, {m[::-1]: c for m, c in self._terms.items()})

    def map_coefficients(self, fn: Callable[[QtRational], QtRational]) -> "SparsePolynomial":
        return SparsePolynomial(self.n, {m: fn(c) for m, c in self._terms.items()})

    def evaluate(self, point: Sequence) -> QtRational:
        if len(point) != self.n:
            raise PolynomialError(f"point has length {len(point)}, expected {self.n}")
        pts = [as_qt(p) for p in point]
        powers: List[Dict[int, QtRational]] = [{0: ONE, 1: p} for p in pts]
        total = ZERO
        for m, c in self._terms.items():
            v = c
            for i, a in enumerate(m):
                if a:
                    cache = powers[i]
                    if a not in cache:
                        cache[a] = pts[i] ** a
                    v = v * cache[a]
            total = total + v
        return total

    def project_pi1(self) -> "SparsePolynomial":
        """x_1 -> 0 followed by the index shift x_{i+1} -> x_i."""
        if self.n < 1:
            raise PolynomialError("projection needs at least one variable")
        return SparsePolynomial._raw(self.n - 1, {m[1:]: c for m, c in self._terms.items() if m[0] == 0})

    def embed(self, n_new: int, offset: int = 0) -> "SparsePolynomial":
        """View as a polynomial in n_new variables, shifting indices by offset."""
        pad_r = n_new - self.n - offset
        if pad_r < 0 or offset < 0:
            raise PolynomialError("cannot embed into fewer variables")
        return SparsePolynomial._raw(
            n_new, {(0,) * offset + m + (0,) * pad_r: c for m, c in self._terms.items()})

    # division -------------------------------------------------------------
    def divide_exact(self, divisor: "SparsePolynomial") -> "SparsePolynomial":
        """Quotient of an exact division; raises InexactDivisionError otherwise."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead_m = max(divisor._terms, key=_grlex_key)
        lead_inv = divisor._terms[lead_m].inverse()
        rest = [(m, c) for m, c in divisor._terms.items() if m != lead_m]
        rem = dict(self._terms)
        quot: Dict[Monomial, QtRational] = {}
        while rem:
            m = max(rem, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(m, lead_m))
            if min(diff) < 0:
                raise InexactDivisionError("division left a nonzero remainder")
            c = rem.pop(m) * lead_inv
            quot[diff] = c
            for m2, c2 in rest:
                mm = tuple(a + b for a, b in zip(diff, m2))
                v = rem.get(mm, ZERO) - c * c2
                if v.is_zero():
                    rem.pop(mm, None)
                else:
                    rem[mm] = v
        return SparsePolynomial._raw(self.n, quot)

    # serialization --------------------------------------------------------
    def to_text(self, var: str = "x") -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "*".join(f"{var}{i + 1}" if a == 1 else f"{var}{i + 1}^{a}"
                            for i, a in enumerate(m) if a)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c.is_one():
                parts.append(mono)
            else:
                if not cs.lstrip("-").replace("^", "").isalnum():
                    cs = f"({cs})"
                parts.append(f"{cs} * {mono}")
        return " + ".join(parts)

    def to_latex(self, var: str = "x") -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.items():
            mono = "".join(f"{var}_{{{i + 1}}}" if a == 1 else f"{var}_{{{i + 1}}}^{{{a}}}"
                           for i, a in enumerate(m) if a)
            cs = c.to_latex()
            if not mono:
                parts.append(cs)
            elif c.is_one():
                parts.append(mono)
            else:
                parts.append(f"\\left({cs}\\right){mono}")
        return " + ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"SparsePolynomial(n={self.n}, {self.to_text()})"

    def to_records(self) -> List[dict]:
        return [{"exponents": list(m), "numerator": str(c.numerator),
                 "denominator": str(c.denominator)} for m, c in self.items()]

    def to_json(self) -> str:
        return json.dumps(self.to_records())

    @classmethod
    def from_records(cls, n: int, records: Iterable[dict]) -> "SparsePolynomial":
        terms = {}
        for r in records:
            c = parse_qt(r["numerator"]) / parse_qt(r["denominator"])
            terms[tuple(r["exponents"])] = c
        return cls(n, terms)


def poly_arith(f: SparsePolynomial, g, op: str) -> SparsePolynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scale(g)
    raise ValueError(f"unknown operation {op!r}")


def poly_sum(polys: Iterable[SparsePolynomial], n: int) -> SparsePolynomial:
    out = SparsePolynomial.zero(n)
    for p in polys:
        out = out + p
    return out


def linear_form(n: int, coeffs: Mapping[int, object]) -> SparsePolynomial:
    """sum c_i x_i for a mapping i -> c_i (1-based)."""
    terms = {}
    for i, c in coeffs.items():
        e = [0] * n
        e[i - 1] = 1
        terms[tuple(e)] = c
    return SparsePolynomial(n, terms)
