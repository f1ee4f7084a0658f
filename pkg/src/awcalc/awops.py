"""Askey-Wilson shift, averaging and divided-difference operators.

Functions of x are handled through their z-model, x = (z + 1/z)/2.  The
shift by k half-steps substitutes z -> s**k z where s = q**(1/2); on this
algebraic model every shift is invertible and shifts compose additively.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import GuardViolation, ZeroDenominator
from .qcore import GaussPoint, Laurent, QParam, RatFunc, SymLaurent, XPoly, as_ratfunc, to_q
from .qcore.xpoly import from_symlaurent

__all__ = [
    "AwContext",
    "shift",
    "aw_diff",
    "aw_avg",
    "mixed",
    "diff_power",
    "to_xpoly",
    "verify_product_rule",
    "verify_quotient_rule",
    "x_of_z",
    "z_of_x",
]


@dataclass(frozen=True)
class AwContext:
    """Fixes q = s**2 for a computation."""

    q: QParam

    @classmethod
    def from_s(cls, s="1/2") -> "AwContext":
        return cls(QParam(to_q(s)))

    @property
    def s(self):
        return self.q.s

    def guard_radius(self, n: int) -> float:
        """|z| must exceed s**(-n) before n-fold shifts are evaluated numerically."""
        return float(self.q.power(-n))

    @cached_property
    def _diff_den(self) -> Laurent:
        # eta x - eta^{-1} x = (s - 1/s)(z - 1/z)/2
        c = (self.s - 1 / self.s) / 2
        return Laurent({1: c, -1: -c})

    def check_guard(self, z, n: int):
        r = abs(complex(z))
        if r <= self.guard_radius(n):
            raise GuardViolation(f"|z| = {r:.6g} is inside the guard radius {self.guard_radius(n):.6g} for {n} shifts")

    def eval_guarded(self, f, z, n: int):
        """Evaluate f at z after checking the guard for n-fold shifts."""
        self.check_guard(z, n)
        return as_ratfunc(f)(z)


def _sym_if_possible(f: RatFunc) -> RatFunc:
    if f.is_polynomial() and not isinstance(f.num, SymLaurent) and f.num.is_symmetric():
        return RatFunc._raw(SymLaurent.from_dense(f.num.lo, f.num.cs), f.den)
    return f


def shift(f, k: int, ctx: AwContext) -> RatFunc:
    """eta**k f, i.e. f with z replaced by s**k z."""
    f = as_ratfunc(f)
    if k == 0:
        return f
    return f.scale_var(ctx.q.power(k))


def aw_diff(f, ctx: AwContext) -> RatFunc:
    """Divided difference (eta f - eta^{-1} f) / (eta x - eta^{-1} x)."""
    f = as_ratfunc(f)
    num = shift(f, 1, ctx) - shift(f, -1, ctx)
    if num.is_zero():
        return RatFunc(0)
    if num.is_polynomial():
        try:
            q = num.num.divmod_exact(ctx._diff_den)
        except ArithmeticError:
            pass
        else:
            return _sym_if_possible(RatFunc.poly(q))
    return _sym_if_possible(num / RatFunc.poly(ctx._diff_den))


def aw_avg(f, n: int, ctx: AwContext) -> RatFunc:
    """Mean of the +n and -n shifts; n = 0 gives f itself."""
    f = as_ratfunc(f)
    if n == 0:
        return f
    return _sym_if_possible((shift(f, n, ctx) + shift(f, -n, ctx)) * to_q("1/2"))


def diff_power(f, t: int, ctx: AwContext) -> RatFunc:
    f = as_ratfunc(f)
    for _ in range(t):
        f = aw_diff(f, ctx)
    return f


def mixed(f, M: int, t: int, ctx: AwContext) -> RatFunc:
    """A_{q^(M-t)} D_q^t f."""
    if not 0 <= t <= M:
        raise ValueError(f"need 0 <= t <= M, got t={t}, M={M}")
    return aw_avg(diff_power(f, t, ctx), M - t, ctx)


def verify_product_rule(f, g, ctx: AwContext) -> bool:
    f, g = as_ratfunc(f), as_ratfunc(g)
    lhs = aw_diff(f * g, ctx)
    rhs = aw_avg(f, 1, ctx) * aw_diff(g, ctx) + aw_avg(g, 1, ctx) * aw_diff(f, ctx)
    return lhs == rhs


def verify_quotient_rule(f, g, ctx: AwContext) -> bool:
    f, g = as_ratfunc(f), as_ratfunc(g)
    if g.is_zero():
        raise ZeroDenominator("quotient rule needs g != 0")
    lhs = aw_diff(f / g, ctx)
    top = aw_avg(g, 1, ctx) * aw_diff(f, ctx) - aw_avg(f, 1, ctx) * aw_diff(g, ctx)
    rhs = top / (shift(g, 1, ctx) * shift(g, -1, ctx))
    return lhs == rhs


def to_xpoly(f) -> XPoly:
    """Re-express a symmetric Laurent-polynomial model in the x basis."""
    f = as_ratfunc(f)
    return from_symlaurent(f.as_laurent())


def z_of_x(x):
    """Branch z = x + sqrt(x**2 - 1) with |z| >= 1 (numpy, complex)."""
    x = np.asarray(x, dtype=complex)
    w = np.sqrt(x * x - 1)
    z = x + w
    alt = x - w
    return np.where(np.abs(z) >= np.abs(alt), z, alt)


def x_of_z(z):
    if isinstance(z, GaussPoint):
        return (z + 1 / z) * to_q("1/2")
    z = np.asarray(z, dtype=complex)
    return (z + 1 / z) / 2
