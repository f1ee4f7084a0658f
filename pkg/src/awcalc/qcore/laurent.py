"""Laurent polynomials in z over the rationals, and their symmetric subclass.

Storage is dense: ``lo`` is the smallest exponent and ``cs`` the coefficient
tuple from ``z**lo`` upwards, trimmed so both ends are nonzero.  The zero
polynomial has ``cs == ()``.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from ..errors import ZeroFunction
from .scalars import GaussPoint, ScalarQ, mpq, q_str, to_q

__all__ = ["Laurent", "SymLaurent", "poly_divmod", "poly_gcd", "squarefree_decomposition"]

_ZERO = mpq(0)
_ONE = mpq(1)


# -- dense polynomial helpers (coefficient lists, lowest degree first) -------


def _trim(cs: list) -> list:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def poly_divmod(a: list, b: list) -> tuple[list, list]:
    """Quotient and remainder of dense polynomials over Q."""
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(list(a))
    if len(r) < len(b):
        return [], r
    inv_lead = 1 / b[-1]
    q = [_ZERO] * (len(r) - len(b) + 1)
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c == 0:
            continue
        c = c * inv_lead
        q[i - db] = c
        for j in range(db + 1):
            r[i - db + j] -= c * b[j]
    return _trim(q), _trim(r[:db])


def _monic(a: list) -> list:
    lead = a[-1]
    if lead == 1:
        return a
    inv = 1 / lead
    return [c * inv for c in a]


def poly_gcd(a: list, b: list) -> list:
    """Monic gcd of two dense polynomials over Q (gcd(0, 0) = 0)."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, (_monic(r) if r else r)
    return _monic(a) if a else a


def poly_derivative(a: list) -> list:
    return _trim([a[k] * k for k in range(1, len(a))])


def squarefree_decomposition(a: list) -> list[tuple[list, int]]:
    """Yun's algorithm: [(factor, multiplicity)] with pairwise coprime squarefree factors."""
    a = _trim(list(a))
    if not a:
        raise ZeroFunction("squarefree decomposition of the zero polynomial")
    if len(a) == 1:
        return []
    out = []
    da = poly_derivative(a)
    g = poly_gcd(a, da)
    b, _ = poly_divmod(a, g)
    c, _ = poly_divmod(da, g)
    d = _sub(c, poly_derivative(b))
    i = 1
    while len(b) > 1:
        h = poly_gcd(b, d)
        bq, _ = poly_divmod(b, h)
        if len(h) > 1:
            out.append((_monic(h), i))
        b = bq
        cq, _ = poly_divmod(d, h)
        d = _sub(cq, poly_derivative(b))
        i += 1
    return out


def _sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else _ZERO) - (b[k] if k < len(b) else _ZERO) for k in range(n)])


# -- Laurent ---------------------------------------------------------------


class Laurent:
    """Finitely supported sum of c_k z**k with exact rational c_k."""

    __slots__ = ("lo", "cs", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        coeffs = {int(k): to_q(v) for k, v in (coeffs or {}).items()}
        coeffs = {k: v for k, v in coeffs.items() if v != 0}
        if not coeffs:
            self._set(0, ())
            return
        lo, hi = min(coeffs), max(coeffs)
        self._set(lo, tuple(coeffs.get(k, _ZERO) for k in range(lo, hi + 1)))

    def _set(self, lo: int, cs: tuple):
        self.lo = lo
        self.cs = cs
        self._hash = None

    @classmethod
    def from_dense(cls, lo: int, cs: Iterable) -> "Laurent":
        cs = [to_q(c) for c in cs]
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        cs = _trim(cs[start:])
        obj = cls.__new__(cls)
        obj._set(lo + start if cs else 0, tuple(cs))
        return obj

    @classmethod
    def constant(cls, c) -> "Laurent":
        return cls.from_dense(0, [c])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Laurent":
        return cls.from_dense(k, [c])

    # basic properties
    @property
    def coeffs(self) -> dict[int, ScalarQ]:
        return {self.lo + i: c for i, c in enumerate(self.cs) if c != 0}

    def is_zero(self) -> bool:
        return not self.cs

    @property
    def min_exp(self) -> int:
        return self.lo

    @property
    def max_exp(self) -> int:
        return self.lo + len(self.cs) - 1

    @property
    def span(self) -> tuple[int, int]:
        return (self.min_exp, self.max_exp)

    @property
    def width(self) -> int:
        """Degree of z**(-min_exp) * self as an ordinary polynomial."""
        return len(self.cs) - 1

    def coeff(self, k: int) -> ScalarQ:
        i = k - self.lo
        return self.cs[i] if 0 <= i < len(self.cs) else _ZERO

    def is_constant(self) -> bool:
        return not self.cs or (len(self.cs) == 1 and self.lo == 0)

    def is_monomial(self) -> bool:
        return len(self.cs) == 1

    def is_symmetric(self) -> bool:
        """c_k == c_{-k} for all k."""
        if not self.cs:
            return True
        return self.lo == -self.max_exp and self.cs == self.cs[::-1]

    @property
    def leading(self) -> ScalarQ:
        return self.cs[-1] if self.cs else _ZERO

    def stripped(self) -> list:
        """Coefficients of z**(-min_exp) * self, lowest degree first."""
        return list(self.cs)

    # arithmetic
    def _result_type(self, other):
        if isinstance(self, SymLaurent) and (not isinstance(other, Laurent) or isinstance(other, SymLaurent)):
            return SymLaurent
        return Laurent

    @staticmethod
    def _coerce(other):
        if isinstance(other, Laurent):
            return other
        try:
            return Laurent.constant(to_q(other))
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        cls = self._result_type(other)
        if not self.cs:
            return cls.from_dense(o.lo, o.cs)
        if not o.cs:
            return cls.from_dense(self.lo, self.cs)
        lo = min(self.lo, o.lo)
        hi = max(self.max_exp, o.max_exp)
        out = [_ZERO] * (hi - lo + 1)
        for i, c in enumerate(self.cs):
            out[self.lo - lo + i] += c
        for i, c in enumerate(o.cs):
            out[o.lo - lo + i] += c
        return cls.from_dense(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self).from_dense(self.lo, [-c for c in self.cs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        res = self + (-o)
        if isinstance(self, SymLaurent) and isinstance(o, SymLaurent):
            return SymLaurent.from_dense(res.lo, res.cs)
        if isinstance(self, SymLaurent) and not isinstance(other, Laurent):
            return SymLaurent.from_dense(res.lo, res.cs)
        return Laurent.from_dense(res.lo, res.cs)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            try:
                c = to_q(other)
            except TypeError:
                return NotImplemented
            return type(self).from_dense(self.lo, [x * c for x in self.cs])
        cls = self._result_type(other)
        if not self.cs or not other.cs:
            return cls.from_dense(0, [])
        a, b = self.cs, other.cs
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return cls.from_dense(self.lo + other.lo, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        out = type(self).constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self.lo == other.lo and self.cs == other.cs
        try:
            o = Laurent.constant(to_q(other))
        except (TypeError, ValueError):
            return NotImplemented
        return self.lo == o.lo and self.cs == o.cs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.lo, self.cs))
        return self._hash

    def __bool__(self):
        return bool(self.cs)

    # substitutions
    def scale_var(self, c) -> "Laurent":
        """Substitute z -> c*z."""
        c = to_q(c)
        if not self.cs:
            return self
        ck = c**self.lo if self.lo >= 0 else (1 / c) ** (-self.lo)
        out = []
        for x in self.cs:
            out.append(x * ck)
            ck *= c
        return Laurent.from_dense(self.lo, out)

    def reflect(self) -> "Laurent":
        """Substitute z -> 1/z."""
        return type(self).from_dense(-self.max_exp, self.cs[::-1]) if self.cs else self

    def shift_exp(self, k: int) -> "Laurent":
        """Multiply by z**k."""
        return Laurent.from_dense(self.lo + k, self.cs)

    # division
    def divmod_exact(self, other: "Laurent") -> "Laurent":
        """Exact quotient self/other; raises ArithmeticError if other does not divide self."""
        if not other.cs:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self.cs:
            return Laurent()
        q, r = poly_divmod(self.cs, other.cs)
        if r:
            raise ArithmeticError("Laurent division is not exact")
        cls = SymLaurent if isinstance(self, SymLaurent) and isinstance(other, SymLaurent) else Laurent
        return cls.from_dense(self.lo - other.lo, q)

    def divides(self, other: "Laurent") -> bool:
        """True when self divides other in Q[z, 1/z]."""
        if not self.cs:
            return not other.cs
        _, r = poly_divmod(other.cs, self.cs)
        return not r

    def gcd(self, other: "Laurent") -> "Laurent":
        """Monic gcd with min exponent 0 (monomial factors are units)."""
        return Laurent.from_dense(0, poly_gcd(self.cs, other.cs))

    # evaluation
    def __call__(self, z):
        if isinstance(z, GaussPoint):
            acc = GaussPoint(0)
            for c in reversed(self.cs):
                acc = acc * z + c
            return acc * (z**self.lo)
        if isinstance(z, (complex, float, np.ndarray, np.generic)):
            return self.evaluate_np(z)
        z = to_q(z)
        acc = _ZERO
        for c in reversed(self.cs):
            acc = acc * z + c
        return acc * (z**self.lo if self.lo >= 0 else (1 / z) ** (-self.lo))

    def evaluate_np(self, z):
        """Floating-point evaluation (numpy broadcasting, complex allowed)."""
        z = np.asarray(z, dtype=complex)
        if not self.cs:
            return np.zeros_like(z)
        coeffs = np.array([float(c) for c in reversed(self.cs)])
        return np.polyval(coeffs, z) * z ** float(self.lo) if self.lo else np.polyval(coeffs, z)

    def __repr__(self):
        if not self.cs:
            return f"{type(self).__name__}(0)"
        terms = ", ".join(f"{k}: {q_str(c)}" for k, c in sorted(self.coeffs.items()))
        return f"{type(self).__name__}({{{terms}}})"


class SymLaurent(Laurent):
    """Laurent polynomial invariant under z <-> 1/z."""

    __slots__ = ()

    def __init__(self, coeffs=None):
        super().__init__(coeffs)
        if not self.is_symmetric():
            raise ValueError("coefficients are not symmetric under z <-> 1/z")

    @classmethod
    def of(cls, g: Laurent) -> "SymLaurent":
        if not g.is_symmetric():
            raise ValueError("Laurent polynomial is not symmetric")
        return cls.from_dense(g.lo, g.cs)
