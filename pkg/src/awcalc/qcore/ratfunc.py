"""Reduced quotients of Laurent polynomials."""

from __future__ import annotations

import numpy as np

from ..errors import ZeroDenominator
from .laurent import Laurent, SymLaurent, poly_divmod, poly_gcd
from .scalars import GaussPoint, to_q

__all__ = ["RatFunc", "as_ratfunc"]


class RatFunc:
    """num/den in canonical form.

    The denominator has min exponent 0, is monic and shares no
    non-monomial factor with the numerator, so two RatFuncs are equal
    exactly when their (num, den) pairs are.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_laurent(num)
        den = Laurent.constant(1) if den is None else _as_laurent(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        self.num, self.den = _reduce(num, den)

    @classmethod
    def _raw(cls, num: Laurent, den: Laurent) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def poly(cls, g: Laurent) -> "RatFunc":
        return cls._raw(g, Laurent.constant(1))

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_symmetric(self) -> bool:
        if self.is_polynomial():
            return self.num.is_symmetric()
        return self.reflect() == self

    def as_laurent(self) -> Laurent:
        if not self.is_polynomial():
            raise ArithmeticError("rational function is not a Laurent polynomial")
        return self.num

    # arithmetic
    def __add__(self, other):
        o = as_ratfunc(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        return self + (-as_ratfunc(other))

    def __rsub__(self, other):
        return as_ratfunc(other) - self

    def __mul__(self, other):
        if not isinstance(other, (RatFunc, Laurent)):
            c = to_q(other)
            return RatFunc._raw(self.num * c, self.den) if c != 0 else RatFunc(0)
        o = as_ratfunc(other)
        if self.is_polynomial() and o.is_polynomial():
            return RatFunc._raw(self.num * o.num, self.den)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = as_ratfunc(other)
        if o.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return as_ratfunc(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(1) / (self ** (-k))
        return RatFunc._raw(self.num**k, self.den**k) if self.is_polynomial() else RatFunc(self.num**k, self.den**k)

    def __eq__(self, other):
        try:
            o = as_ratfunc(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    # substitutions
    def scale_var(self, c) -> "RatFunc":
        """Substitute z -> c*z."""
        if self.is_polynomial():
            return RatFunc._raw(self.num.scale_var(c), self.den)
        return RatFunc(self.num.scale_var(c), self.den.scale_var(c))

    def reflect(self) -> "RatFunc":
        return RatFunc(self.num.reflect(), self.den.reflect())

    # evaluation
    def __call__(self, z):
        if isinstance(z, (complex, float, np.ndarray, np.generic)):
            return self.num.evaluate_np(z) / self.den.evaluate_np(z)
        return self.num(z) / self.den(z)

    def evaluate_np(self, z):
        return self.num.evaluate_np(z) / self.den.evaluate_np(z)

    def __repr__(self):
        if self.is_polynomial():
            return f"RatFunc({self.num!r})"
        return f"RatFunc({self.num!r}, {self.den!r})"


def _as_laurent(value) -> Laurent:
    if isinstance(value, Laurent):
        return value
    from .xpoly import XPoly

    if isinstance(value, XPoly):
        return value.to_symlaurent()
    return Laurent.constant(to_q(value))


def as_ratfunc(value) -> RatFunc:
    """Coerce scalars, XPoly, Laurent and RatFunc to RatFunc."""
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (Laurent,)) or _is_scalar(value):
        return RatFunc.poly(_as_laurent(value))
    from .xpoly import XPoly

    if isinstance(value, XPoly):
        return RatFunc.poly(value.to_symlaurent())
    raise TypeError(f"cannot use {type(value).__name__} as a rational function")


def _is_scalar(value) -> bool:
    try:
        to_q(value)
    except (TypeError, ValueError):
        return False
    return not isinstance(value, (GaussPoint,))


def _reduce(num: Laurent, den: Laurent) -> tuple[Laurent, Laurent]:
    if num.is_zero():
        return Laurent(), Laurent.constant(1)
    shift = num.lo - den.lo
    pn, pd = list(num.cs), list(den.cs)
    if len(pd) > 1:
        q, r = poly_divmod(pn, pd)
        if not r:
            pn, pd = q, [pd[0] ** 0]
        else:
            g = poly_gcd(pn, pd)
            if len(g) > 1:
                pn, _ = poly_divmod(pn, g)
                pd, _ = poly_divmod(pd, g)
    lead = pd[-1]
    if lead != 1:
        inv = 1 / lead
        pn = [c * inv for c in pn]
        pd = [c * inv for c in pd]
    num_cls = SymLaurent if len(pd) == 1 and isinstance(num, SymLaurent) else Laurent
    out_num = num_cls.from_dense(shift, pn)
    if num_cls is SymLaurent and not out_num.is_symmetric():
        out_num = Laurent.from_dense(out_num.lo, out_num.cs)
    return out_num, Laurent.from_dense(0, pd)
