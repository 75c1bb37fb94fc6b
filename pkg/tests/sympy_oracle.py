"""Independent symbolic reference implementations used by the tests."""
import sympy

from partial_macdonald.multipoly import SparsePolynomial

Q, T = sympy.symbols("q t")


def xs(n):
    return sympy.symbols(f"x1:{n + 1}")


def coeff_to_sympy(c):
    return sympy.sympify(str(c).replace("^", "**"), locals={"q": Q, "t": T})


def to_sympy(f: SparsePolynomial):
    v = xs(f.n)
    out = 0
    for m, c in f.items():
        term = coeff_to_sympy(c)
        for var, a in zip(v, m):
            term *= var**a
        out += term
    return out


def swap(expr, n, i):
    v = xs(n)
    return expr.subs({v[i - 1]: v[i], v[i]: v[i - 1]}, simultaneous=True)


def T_op(expr, n, i):
    """t s_i f + (t-1) x_{i+1} (f - s_i f)/(x_{i+1} - x_i)."""
    v = xs(n)
    sf = swap(expr, n, i)
    return T * sf + (T - 1) * v[i] * sympy.cancel((expr - sf) / (v[i] - v[i - 1]))


def H_op(expr, n, i):
    """a(z_i, z_{i+1}) f + b(z_i, z_{i+1}) s_i f."""
    v = xs(n)
    x, y = v[i - 1], v[i]
    return sympy.cancel(((T - 1) * x * expr + (x - T * y) * swap(expr, n, i)) / (x - y))


def equal(expr_a, expr_b) -> bool:
    return sympy.simplify(sympy.together(expr_a - expr_b)) == 0
