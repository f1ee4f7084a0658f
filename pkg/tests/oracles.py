"""Reference implementations built on sympy, independent of the awcalc algebra."""

from __future__ import annotations

from fractions import Fraction

import sympy as sp

Z = sp.Symbol("z")


def x_expr(z=Z):
    return (z + 1 / z) / 2


def xpoly_expr(coeffs, z=Z):
    """Polynomial in x = (z + 1/z)/2 written as a sympy expression in z."""
    x = x_expr(z)
    return sum(sp.Rational(str(c)) * x**k for k, c in enumerate(coeffs))


def shift(expr, k, s):
    return expr.subs(Z, sp.Rational(s) ** k * Z)


def dq(expr, s):
    s = sp.Rational(s)
    num = shift(expr, 1, s) - shift(expr, -1, s)
    den = shift(x_expr(), 1, s) - shift(x_expr(), -1, s)
    return sp.cancel(sp.together(num / den))


def avg(expr, n, s):
    return sp.cancel(sp.together((shift(expr, n, s) + shift(expr, -n, s)) / 2))


def dq_power(expr, t, s):
    for _ in range(t):
        expr = dq(expr, s)
    return expr


def wronskian(exprs, s):
    """det of rows A_{q^(n-i)} D^i applied to the tuple, i = 0..n."""
    n = len(exprs) - 1
    rows = [[avg(dq_power(f, i, s), n - i, s) for f in exprs] for i in range(n + 1)]
    return sp.cancel(sp.Matrix(rows).det(method="berkowitz"))


def to_x_coeffs(expr):
    """Coefficients (lowest first) of a symmetric Laurent polynomial in z as a polynomial in x."""
    expr = sp.cancel(sp.together(expr))
    num, den = sp.fraction(expr)
    pnum = sp.Poly(num, Z)
    pden = sp.Poly(den, Z)
    if pden.length() != 1:
        raise ValueError("not a Laurent polynomial")
    shift_deg = pden.degree()
    lead = pden.LC()
    laurent = {e[0] - shift_deg: sp.Rational(c) / lead for e, c in pnum.terms()}
    out = []
    while laurent:
        top = max(laurent)
        c = laurent[top] * 2**top
        out.append((top, c))
        # subtract c x^top
        sub = sp.Poly(sp.expand(c * x_expr() ** top * Z**top), Z)
        for e, v in sub.terms():
            k = e[0] - top
            laurent[k] = laurent.get(k, 0) - v
            if laurent[k] == 0:
                del laurent[k]
    if not out:
        return []
    coeffs = [Fraction(0)] * (out[0][0] + 1)
    for k, c in out:
        coeffs[k] = Fraction(int(c.p), int(c.q))
    return coeffs


def eval_x(coeffs, x):
    return sum(Fraction(c) * Fraction(x) ** k for k, c in enumerate(coeffs))


def dq_pointwise(coeffs, z, s):
    """D_q f at a rational z by direct evaluation of the divided difference."""
    z, s = Fraction(z), Fraction(s)

    def xo(w):
        return (w + 1 / w) / 2

    up, dn = xo(s * z), xo(z / s)
    return (eval_x(coeffs, up) - eval_x(coeffs, dn)) / (up - dn)


def min_max_partition(degrees, bins):
    """Plain exhaustive search over all assignments (tiny inputs only)."""
    from itertools import product

    best = None
    for assign in product(range(bins), repeat=len(degrees)):
        if len(set(assign)) != bins:
            continue
        loads = [0] * bins
        for d, b in zip(degrees, assign):
            loads[b] += d
        m = max(loads)
        best = m if best is None else min(best, m)
    return best
