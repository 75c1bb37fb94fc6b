"""Exact arithmetic in Z[q,t] and its fraction field Q(q,t).

Polynomials are stored as FLINT ``fmpz_mpoly`` objects in the variables
(q, t); the public surface is :class:`BivariatePoly` and :class:`QtRational`.
Every ``QtRational`` is kept fully reduced with a canonical sign, so equal
field elements always serialize identically.
"""
from __future__ import annotations

import re
from functools import reduce as _fold
from typing import Dict, Iterable, Tuple, Union

import flint

_CTX = flint.fmpz_mpoly_ctx.get(("q", "t"), "lex")
_Q_GEN, _T_GEN = _CTX.gens()
_ONE = _CTX.from_dict({(0, 0): 1})
_ZERO = _CTX.from_dict({})

Exponent = Tuple[int, int]


class QtArithmeticError(ArithmeticError):
    """Raised for division by zero and malformed input in Q(q,t)."""


def _sorted_terms(p) -> list:
    """Terms of a raw fmpz_mpoly in canonical (ascending lex) order."""
    pairs = [(tuple(int(e) for e in m), int(c)) for m, c in zip(p.monoms(), p.coeffs())]
    pairs.sort()
    return pairs


def _format_terms(p) -> str:
    terms = _sorted_terms(p)
    if not terms:
        return "0"
    out = []
    for idx, ((dq, dt), c) in enumerate(terms):
        factors = []
        if dq:
            factors.append("q" if dq == 1 else f"q^{dq}")
        if dt:
            factors.append("t" if dt == 1 else f"t^{dt}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = str(mag) + "*" + "*".join(factors)
        if idx == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class BivariatePoly:
    """Element of Z[q,t]; immutable."""

    __slots__ = ("_p",)

    def __init__(self, value: Union[int, "BivariatePoly", Dict[Exponent, int], None] = 0):
        if isinstance(value, BivariatePoly):
            self._p = value._p
        elif isinstance(value, int):
            self._p = _CTX.from_dict({(0, 0): value}) if value else _ZERO
        elif isinstance(value, dict):
            self._p = _CTX.from_dict({k: v for k, v in value.items() if v})
        elif isinstance(value, flint.fmpz_mpoly):
            self._p = value
        else:
            raise TypeError(f"cannot build BivariatePoly from {type(value).__name__}")

    @classmethod
    def _wrap(cls, p) -> "BivariatePoly":
        obj = cls.__new__(cls)
        obj._p = p
        return obj

    def terms(self) -> Dict[Exponent, int]:
        """Exponent pair (d_q, d_t) -> integer coefficient, in canonical order."""
        return dict(_sorted_terms(self._p))

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def degrees(self) -> Exponent:
        d = self._p.degrees()
        return (max(int(d[0]), 0), max(int(d[1]), 0))

    def __len__(self):
        return len(self._p)

    def __add__(self, other):
        return BivariatePoly._wrap(self._p + _raw_poly(other))

    __radd__ = __add__

    def __sub__(self, other):
        return BivariatePoly._wrap(self._p - _raw_poly(other))

    def __rsub__(self, other):
        return BivariatePoly._wrap(_raw_poly(other) - self._p)

    def __mul__(self, other):
        return BivariatePoly._wrap(self._p * _raw_poly(other))

    __rmul__ = __mul__

    def __neg__(self):
        return BivariatePoly._wrap(-self._p)

    def __pow__(self, e: int):
        return BivariatePoly._wrap(self._p ** e)

    def __eq__(self, other):
        if isinstance(other, (BivariatePoly, int)):
            return self._p == _raw_poly(other)
        return NotImplemented

    def __hash__(self):
        return hash(str(self))

    def __call__(self, q, t):
        """Evaluate at integer or rational points."""
        total = 0
        for (dq, dt), c in self.terms().items():
            total += c * q ** dq * t ** dt
        return total

    def __str__(self):
        return _format_terms(self._p)

    def __repr__(self):
        return f"BivariatePoly({self})"


def _raw_poly(x):
    if isinstance(x, BivariatePoly):
        return x._p
    if isinstance(x, int):
        return _CTX.from_dict({(0, 0): x}) if x else _ZERO
    if isinstance(x, flint.fmpz_mpoly):
        return x
    raise TypeError(f"not a polynomial: {type(x).__name__}")


def _lowest_coeff(p) -> int:
    # lex ordering lists terms in descending order; the canonical leading
    # term is the lowest one, i.e. the last entry.
    return int(p.coeffs()[-1])


def _canonical(num, den) -> Tuple[object, object]:
    if den.is_zero():
        raise QtArithmeticError("zero denominator")
    if num.is_zero():
        return _ZERO, _ONE
    if not den.is_one():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    if _lowest_coeff(den) < 0:
        num, den = -num, -den
    return num, den


class QtRational:
    """Element of Q(q,t) in canonical reduced form.

    The denominator's lowest term (in ascending lexicographic order on
    (d_q, d_t)) has a positive coefficient, and numerator and denominator
    share no nonunit factor.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num=0, den=1):
        if isinstance(num, QtRational) and isinstance(den, int) and den == 1:
            self._num, self._den = num._num, num._den
            return
        if isinstance(num, QtRational) or isinstance(den, QtRational):
            r = as_qt(num) / as_qt(den)
            self._num, self._den = r._num, r._den
            return
        self._num, self._den = _canonical(_raw_poly(num), _raw_poly(den))

    @classmethod
    def _make(cls, num, den) -> "QtRational":
        obj = cls.__new__(cls)
        obj._num = num
        obj._den = den
        return obj

    @classmethod
    def _from_raw(cls, num, den) -> "QtRational":
        n, d = _canonical(num, den)
        return cls._make(n, d)

    @classmethod
    def monomial(cls, dq: int = 0, dt: int = 0, coeff: int = 1) -> "QtRational":
        """c * q^dq * t^dt with possibly negative exponents."""
        if coeff == 0:
            return ZERO
        nq, dq2 = (dq, 0) if dq >= 0 else (0, -dq)
        nt, dt2 = (dt, 0) if dt >= 0 else (0, -dt)
        num = _CTX.from_dict({(nq, nt): coeff})
        den = _CTX.from_dict({(dq2, dt2): 1})
        return cls._make(num, den)

    @property
    def numerator(self) -> BivariatePoly:
        return BivariatePoly._wrap(self._num)

    @property
    def denominator(self) -> BivariatePoly:
        return BivariatePoly._wrap(self._den)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_one(self) -> bool:
        return self._num.is_one() and self._den.is_one()

    def is_polynomial(self) -> bool:
        """True when the value lies in Z[q,t]."""
        return self._den.is_one()

    def is_monomial(self) -> bool:
        return len(self._num) == 1 and len(self._den) == 1

    def monomial_exponents(self) -> Tuple[int, int]:
        """(d_q, d_t) of a unit-coefficient monomial q^d_q t^d_t."""
        if not self.is_monomial() or int(self._den.coeffs()[0]) != 1 or int(self._num.coeffs()[0]) != 1:
            raise QtArithmeticError(f"{self} is not a unit monomial")
        (nq, nt), (dq, dt) = self._num.monoms()[0], self._den.monoms()[0]
        return int(nq) - int(dq), int(nt) - int(dt)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._num, self._den, o._num, o._den
        if a.is_zero():
            return o
        if c.is_zero():
            return self
        if b == d:
            if b.is_one():
                return QtRational._make(a + c, b)
            return QtRational._from_raw(a + c, b)
        g = b.gcd(d)
        if g.is_one():
            return QtRational._from_raw(a * d + c * b, b * d)
        bg, dg = b / g, d / g
        num = a * dg + c * bg
        if num.is_zero():
            return ZERO
        g2 = num.gcd(g)
        if not g2.is_one():
            num = num / g2
            g = g / g2
        n, den = num, bg * dg * g
        if _lowest_coeff(den) < 0:
            n, den = -n, -den
        return QtRational._make(n, den)

    __radd__ = __add__

    def __neg__(self):
        return QtRational._make(-self._num, self._den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._num, self._den, o._num, o._den
        if a.is_zero() or c.is_zero():
            return ZERO
        if b.is_one() and d.is_one():
            return QtRational._make(a * c, b)
        g1 = a.gcd(d)
        g2 = c.gcd(b)
        if not g1.is_one():
            a, d = a / g1, d / g1
        if not g2.is_one():
            c, b = c / g2, b / g2
        num, den = a * c, b * d
        if _lowest_coeff(den) < 0:
            num, den = -num, -den
        return QtRational._make(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "QtRational":
        if self._num.is_zero():
            raise QtArithmeticError("division by zero in Q(q,t)")
        num, den = self._den, self._num
        if _lowest_coeff(den) < 0:
            num, den = -num, -den
        return QtRational._make(num, den)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return QtRational._make(self._num ** e, self._den ** e)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        return hash((str(self._num), str(self._den)))

    def __bool__(self):
        return not self._num.is_zero()

    # conversions ----------------------------------------------------------
    def invert_qt(self) -> "QtRational":
        """The substitution (q, t) -> (1/q, 1/t)."""
        def flip(p):
            dq, dt = (int(x) for x in p.degrees())
            dq, dt = max(dq, 0), max(dt, 0)
            rev = {(dq - m[0], dt - m[1]): int(c) for m, c in zip(p.monoms(), p.coeffs())}
            return _CTX.from_dict(rev), (dq, dt)
        num, (nq, nt) = flip(self._num)
        den, (mq, mt) = flip(self._den)
        return QtRational._from_raw(num, den) * QtRational.monomial(mq - nq, mt - nt)

    def evaluate(self, q, t):
        """Substitute numbers (ints, Fractions) for q and t."""
        n = BivariatePoly._wrap(self._num)(q, t)
        d = BivariatePoly._wrap(self._den)(q, t)
        if d == 0:
            raise QtArithmeticError("denominator vanishes at evaluation point")
        from fractions import Fraction
        return Fraction(n) / Fraction(d)

    def __str__(self):
        num = _format_terms(self._num)
        if self._den.is_one():
            return num
        den = _format_terms(self._den)
        if len(self._num) > 1:
            num = f"({num})"
        if len(self._den) > 1 or not re.fullmatch(r"[qt0-9^]+", den):
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"QtRational({self})"

    def to_latex(self) -> str:
        """LaTeX display; factored when numerator and denominator split into
        binomials and monomials, expanded otherwise."""
        def fmt(p):
            if p.is_one():
                return "1", True
            content, factors = p.factor()
            if any(len(f) > 2 for f, _ in factors):
                return _latex_terms(p), False
            parts = []
            c = int(content)
            mono = []
            for f, e in factors:
                if _lowest_coeff(f) < 0:
                    f = -f
                    c *= (-1) ** int(e)
                if len(f) == 1:
                    mono.append(_latex_power(_latex_terms(f), int(e), paren=False))
                else:
                    parts.append(_latex_power("(" + _latex_terms(f) + ")", int(e)))
            head = "" if c == 1 else ("-" if c == -1 else str(c))
            body = "".join(mono + parts)
            if not body:
                return str(c), True
            return head + body, True
        if self._num.is_zero():
            return "0"
        num, _ = fmt(self._num)
        if self._den.is_one():
            return num
        den, _ = fmt(self._den)
        return r"\frac{" + num + "}{" + den + "}"


def _latex_terms(p) -> str:
    return re.sub(r"\^(-?\d+)", r"^{\1}", _format_terms(p).replace("*", ""))


def _latex_power(base: str, e: int, paren: bool = True) -> str:
    if e == 1:
        return base
    return f"{base}^{{{e}}}"


def _coerce(x):
    if isinstance(x, QtRational):
        return x
    if isinstance(x, int):
        return QtRational._make(_raw_poly(x), _ONE)
    if isinstance(x, BivariatePoly):
        return QtRational._make(x._p, _ONE)
    return None


def as_qt(x) -> QtRational:
    """Coerce ints, polynomials and strings into QtRational."""
    if isinstance(x, str):
        return parse_qt(x)
    r = _coerce(x)
    if r is None:
        raise TypeError(f"cannot coerce {type(x).__name__} to QtRational")
    return r


def reduce(n, d) -> QtRational:
    """Canonical reduced fraction n/d."""
    n, d = _raw_poly(n), _raw_poly(d)
    if d.is_zero():
        raise QtArithmeticError("reduce: zero denominator")
    return QtRational._from_raw(n, d)


def field_arith(a: QtRational, b: QtRational, op: str) -> QtRational:
    a, b = as_qt(a), as_qt(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def qt_sum(values: Iterable[QtRational]) -> QtRational:
    return _fold(lambda x, y: x + y, values, ZERO)


def qt_prod(values: Iterable[QtRational]) -> QtRational:
    return _fold(lambda x, y: x * y, values, ONE)


ZERO = QtRational._make(_ZERO, _ONE)
ONE = QtRational._make(_ONE, _ONE)
q = QtRational._make(_Q_GEN, _ONE)
t = QtRational._make(_T_GEN, _ONE)


def qt_mono(dq: int, dt: int) -> QtRational:
    return QtRational.monomial(dq, dt)


# parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[qt+\-*/^()]))")


def _tokenize(text: str):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise QtArithmeticError(f"unexpected character at {pos} in {text!r}")
        if m.group(1) is not None:
            out.append(("int", int(m.group(1))))
        else:
            sym = m.group(2)
            out.append(("op", "^" if sym == "**" else sym))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise QtArithmeticError(f"expected {value!r}, found {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, e = self.take()
            if kind != "int":
                raise QtArithmeticError("exponent must be an integer")
            return base ** (sign * e)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return as_qt(val)
        if val == "q":
            self.take()
            return q
        if val == "t":
            self.take()
            return t
        if val == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise QtArithmeticError(f"unexpected token {val!r}")


def parse_qt(text: str) -> QtRational:
    """Parse the text form produced by ``str(QtRational)`` (and more)."""
    p = _Parser(_tokenize(text))
    if not p.toks:
        raise QtArithmeticError("empty expression")
    val = p.expr()
    if p.i != len(p.toks):
        raise QtArithmeticError(f"trailing input in {text!r}")
    return val
