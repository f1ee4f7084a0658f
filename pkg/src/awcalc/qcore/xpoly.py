"""Polynomials in x and the x = (z + 1/z)/2 substitution."""

from __future__ import annotations

import json
from typing import Iterable, Sequence

import numpy as np

from .laurent import Laurent, SymLaurent, _trim
from .scalars import GaussPoint, ScalarQ, mpq, q_str, to_q

__all__ = ["XPoly", "to_symlaurent", "from_symlaurent", "X_MODEL"]

_HALF = mpq(1, 2)


class XPoly:
    """Polynomial in x with exact rational coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs: tuple[ScalarQ, ...] = tuple(_trim([to_q(c) for c in coeffs]))

    @classmethod
    def x(cls) -> "XPoly":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "XPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Sequence, lead=1) -> "XPoly":
        """lead * prod (x - r) for rational roots r."""
        out = cls([lead])
        for r in roots:
            out = out * cls([-to_q(r), 1])
        return out

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def _coerce(self, other):
        if isinstance(other, XPoly):
            return other
        return XPoly([to_q(other)])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (mpq(0),) * (n - len(self.coeffs))
        b = o.coeffs + (mpq(0),) * (n - len(o.coeffs))
        return XPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return XPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return XPoly()
        out = [mpq(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return XPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = XPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, XPoly):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == XPoly([to_q(other)]).coeffs
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "XPoly":
        return XPoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        if isinstance(x, (complex, float, np.ndarray, np.generic)):
            return self.evaluate_np(x)
        if isinstance(x, GaussPoint):
            acc = GaussPoint(0)
        else:
            x = to_q(x)
            acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate_np(self, x):
        x = np.asarray(x, dtype=complex)
        if not self.coeffs:
            return np.zeros_like(x)
        return np.polyval(np.array([float(c) for c in reversed(self.coeffs)]), x)

    def as_laurent(self) -> Laurent:
        """The same coefficients read as a polynomial in a single variable (for root and order queries in x)."""
        return Laurent.from_dense(0, self.coeffs)

    def to_symlaurent(self) -> SymLaurent:
        return to_symlaurent(self)

    # serialization
    def to_json(self) -> str:
        """JSON array of "num/den" strings, lowest degree first."""
        return json.dumps([q_str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text) -> "XPoly":
        data = json.loads(text) if isinstance(text, str) else text
        return cls([to_q(str(c)) for c in data])

    def render(self, var: str = "x") -> str:
        """Descending powers with exact "num/den" coefficients, e.g. ``5/2 * x``."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                body = q_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{q_str(mag)} * {mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"XPoly({self.render()!r})"


X_MODEL = SymLaurent.from_dense(-1, [_HALF, 0, _HALF])


def to_symlaurent(p: XPoly) -> SymLaurent:
    """p((z + 1/z)/2) as a symmetric Laurent polynomial (Horner in the z-model)."""
    acc = SymLaurent.from_dense(0, [])
    for c in reversed(p.coeffs):
        acc = acc * X_MODEL + c
    return SymLaurent.from_dense(acc.lo, acc.cs)


def from_symlaurent(g: Laurent) -> XPoly:
    """Inverse of :func:`to_symlaurent`; raises ValueError for non-symmetric input."""
    if not g.is_symmetric():
        raise ValueError("only symmetric Laurent polynomials come from polynomials in x")
    if g.is_zero():
        return XPoly()
    deg = g.max_exp
    rest = Laurent.from_dense(g.lo, g.cs)
    out = [mpq(0)] * (deg + 1)
    for k in range(deg, -1, -1):
        c = rest.coeff(k)
        if c == 0:
            continue
        a = c * 2**k
        out[k] = a
        rest = rest - to_symlaurent(XPoly([0] * k + [a]))
    if not rest.is_zero():
        raise ArithmeticError("residual after x-basis conversion")
    return XPoly(out)
