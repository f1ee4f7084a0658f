"""Askey-Wilson Wronskian-Casorati determinants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .awops import AwContext, aw_avg, aw_diff, diff_power, shift
from .errors import ZeroDivisor
from .qcore import Laurent, RatFunc, as_ratfunc, to_q
from .qcore.linalg import determinant, rank

__all__ = [
    "FunctionTuple",
    "wronskian",
    "wronskian_shift_form",
    "wronskian_sign_form",
    "verify_properties",
    "property_report",
    "linearly_independent",
]


@dataclass(frozen=True)
class FunctionTuple:
    """(f_0, ..., f_n) sharing one AwContext."""

    entries: tuple
    ctx: AwContext

    def __post_init__(self):
        entries = tuple(as_ratfunc(f) for f in self.entries)
        if not entries:
            raise ValueError("a function tuple needs at least one entry")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, fs, ctx: AwContext) -> "FunctionTuple":
        return cls(tuple(fs), ctx)

    @property
    def n(self) -> int:
        return len(self.entries) - 1

    def __len__(self):
        return len(self.entries)

    def replace(self, entries) -> "FunctionTuple":
        return FunctionTuple(tuple(entries), self.ctx)


def _det(rows):
    # the determinant of a 1x1 matrix is its entry; empty tuples are rejected upstream
    return as_ratfunc(determinant(rows))


def wronskian(fs: FunctionTuple) -> RatFunc:
    """Determinant with row i equal to A_{q^(n-i)} D_q^i of each entry."""
    n, ctx = fs.n, fs.ctx
    rows = []
    derivs = list(fs.entries)
    for i in range(n + 1):
        rows.append([aw_avg(g, n - i, ctx) for g in derivs])
        if i < n:
            derivs = [aw_diff(g, ctx) for g in derivs]
    return _det(rows)


def _shifted_x_gap(a: int, b: int, ctx: AwContext) -> Laurent:
    # eta^a x - eta^b x in the z-model: (s^a - s^b) z/2 + (s^-a - s^-b) z^-1/2
    p = ctx.q.power
    half = to_q("1/2")
    return Laurent({1: (p(a) - p(b)) * half, -1: (p(-a) - p(-b)) * half})


def shift_form_prefactor(n: int, ctx: AwContext) -> RatFunc:
    """prod_{i=1..n} prod_{j=1..i} -1 / (eta^(i-2j+2) x - eta^(i-2j) x)."""
    den = Laurent.constant(1)
    sign = 1
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            den = den * _shifted_x_gap(i - 2 * j + 2, i - 2 * j, ctx)
            sign = -sign
    return RatFunc(Laurent.constant(sign), den)


def wronskian_shift_form(fs: FunctionTuple) -> RatFunc:
    """det[eta^(n-2k) f_j] times the product prefactor."""
    n, ctx = fs.n, fs.ctx
    rows = [[shift(f, n - 2 * k, ctx) for f in fs.entries] for k in range(n + 1)]
    if n == 0:
        return rows[0][0]
    return _det(rows) * shift_form_prefactor(n, ctx)


def wronskian_sign_form(fs: FunctionTuple, deltas: Sequence[int] | None = None) -> RatFunc:
    """Rows eta^(delta_i (n-i)) D_q^i f for i < n, last row D_q^n f; delta_i in {+1, -1}."""
    n, ctx = fs.n, fs.ctx
    deltas = [1] * n if deltas is None else list(deltas)
    if len(deltas) != n or any(d not in (1, -1) for d in deltas):
        raise ValueError(f"need {n} sign choices from {{+1, -1}}")
    rows = []
    for i in range(n + 1):
        derived = [diff_power(f, i, ctx) for f in fs.entries]
        k = deltas[i] * (n - i) if i < n else 0
        rows.append([shift(g, k, ctx) for g in derived])
    return _det(rows)


def _shift_product(g: RatFunc, n: int, ctx: AwContext) -> RatFunc:
    out = RatFunc(1)
    for k in range(n + 1):
        out = out * shift(g, n - 2 * k, ctx)
    return out


def property_report(fs: FunctionTuple, g, cs: Sequence) -> dict[str, bool]:
    """Check the four structural identities separately; returns {"i": ..., ..., "iv": ...}."""
    n, ctx = fs.n, fs.ctx
    g = as_ratfunc(g)
    cs = [to_q(c) for c in cs]
    if len(cs) != n + 1 or any(c == 0 for c in cs):
        raise ValueError("need n+1 nonzero scalars")
    base = wronskian(fs)

    scaled = fs.replace(c * f for c, f in zip(cs, fs.entries))
    prod_c = to_q(1)
    for c in cs:
        prod_c *= c
    out = {"i": wronskian(scaled) == base * prod_c}

    if n == 0:
        # W(1) = 1 and the empty Wronskian is 1 by convention
        out["ii"] = wronskian(fs.replace([1])) == RatFunc(1)
    else:
        lhs = wronskian(fs.replace([1, *fs.entries[1:]]))
        rhs = wronskian(fs.replace(aw_diff(f, ctx) for f in fs.entries[1:]))
        out["ii"] = lhs == rhs

    times_g = fs.replace(f * g for f in fs.entries)
    out["iii"] = wronskian(times_g) == _shift_product(g, n, ctx) * base

    f0 = fs.entries[0]
    if f0.is_zero():
        raise ZeroDivisor("property (iv) divides by f_0, which is zero")
    if n == 0:
        out["iv"] = base == _shift_product(f0, 0, ctx)
    else:
        inner = fs.replace(aw_diff(f / f0, ctx) for f in fs.entries[1:])
        out["iv"] = base == _shift_product(f0, n, ctx) * wronskian(inner)
    return out


def verify_properties(fs: FunctionTuple, g, cs: Sequence) -> bool:
    """True when the scaling, unit, product and quotient identities all hold exactly."""
    return all(property_report(fs, g, cs).values())


def linearly_independent(fs: FunctionTuple) -> bool:
    """Exact rank of the coefficient matrix of polynomial entries."""
    polys = []
    for f in fs.entries:
        if not f.is_polynomial():
            raise ValueError("linear independence oracle needs polynomial entries")
        polys.append(f.num)
    nonzero = [p for p in polys if not p.is_zero()]
    if len(nonzero) < len(polys):
        return False
    lo = min(p.min_exp for p in polys)
    hi = max(p.max_exp for p in polys)
    rows = [[p.coeff(k) for k in range(lo, hi + 1)] for p in polys]
    return rank(rows) == len(polys)
