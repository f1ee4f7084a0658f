"""Exact scalars: rationals (gmpy2.mpq) and Gaussian rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

ScalarQ = type(mpq())

__all__ = ["ScalarQ", "QParam", "GaussPoint", "to_q", "mpq"]


def to_q(value) -> ScalarQ:
    """Coerce ints, Fractions, "num/den" strings and finite floats to an exact rational."""
    if isinstance(value, ScalarQ):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, (int, Fraction, Rational)):
        return mpq(value.numerator, value.denominator) if not isinstance(value, int) else mpq(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "." in text and "/" not in text:
                return mpq(Fraction(text))
            return mpq(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError("non-finite float")
        return mpq(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def q_str(value: ScalarQ) -> str:
    """Render as "num/den" (or "num" for integers)."""
    value = to_q(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class QParam:
    """The base q = s**2, stored through its exact square root s in (0, 1)."""

    s: ScalarQ

    def __post_init__(self):
        s = to_q(self.s)
        if not 0 < s < 1:
            raise ValueError(f"q^(1/2) must lie in (0, 1), got {s}")
        object.__setattr__(self, "s", s)

    @property
    def q(self) -> ScalarQ:
        return self.s * self.s

    def power(self, k: int) -> ScalarQ:
        """s**k for any integer k (i.e. q**(k/2))."""
        return self.s**k if k >= 0 else (1 / self.s) ** (-k)


@dataclass(frozen=True)
class GaussPoint:
    """Exact complex rational re + i*im."""

    re: ScalarQ
    im: ScalarQ = mpq(0)

    def __post_init__(self):
        object.__setattr__(self, "re", to_q(self.re))
        object.__setattr__(self, "im", to_q(self.im))

    @classmethod
    def of(cls, value) -> "GaussPoint":
        if isinstance(value, GaussPoint):
            return value
        if isinstance(value, complex):
            return cls(to_q(value.real), to_q(value.imag))
        return cls(to_q(value), mpq(0))

    def __add__(self, other):
        other = GaussPoint.of(other)
        return GaussPoint(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussPoint.of(other)
        return GaussPoint(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussPoint.of(other) - self

    def __neg__(self):
        return GaussPoint(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussPoint.of(other)
        return GaussPoint(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussPoint.of(other)
        den = other.abs2()
        if den == 0:
            raise ZeroDivisionError("division by the zero Gaussian rational")
        return GaussPoint(
            (self.re * other.re + self.im * other.im) / den,
            (self.im * other.re - self.re * other.im) / den,
        )

    def __rtruediv__(self, other):
        return GaussPoint.of(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussPoint(1) / (self ** (-k))
        out, base = GaussPoint(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def abs2(self) -> ScalarQ:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> "GaussPoint":
        return GaussPoint(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self):
        if self.im == 0:
            return f"GaussPoint({q_str(self.re)})"
        return f"GaussPoint({q_str(self.re)}, {q_str(self.im)})"
