"""Homogeneous polynomials in x_0..x_n with rational coefficients."""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

import numpy as np

from .scalars import q_str, to_q
from .xpoly import XPoly

__all__ = ["HomPoly"]


class HomPoly:
    """Sparse polynomial {exponent tuple: coefficient} in nvars variables.

    Homogeneity is not forced on construction (products of homogeneous
    polynomials stay homogeneous); ``is_homogeneous`` checks it.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        self.nvars = int(nvars)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps} for {nvars} variables")
            c = to_q(c)
            if c != 0:
                clean[exps] = clean.get(exps, 0) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def linear(cls, coeffs: Sequence) -> "HomPoly":
        """sum c_i x_i."""
        n = len(coeffs)
        return cls(n, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def variable(cls, i: int, nvars: int) -> "HomPoly":
        return cls.linear([int(j == i) for j in range(nvars)])

    @classmethod
    def constant(cls, c, nvars: int) -> "HomPoly":
        return cls(nvars, {(0,) * nvars: c})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def norm(self) -> float:
        """Largest absolute coefficient."""
        return float(max((abs(c) for c in self.terms.values()), default=0))

    def __add__(self, other: "HomPoly") -> "HomPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return HomPoly(self.nvars, out)

    def __neg__(self):
        return HomPoly(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, HomPoly):
            c = to_q(other)
            return HomPoly(self.nvars, {k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return HomPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = HomPoly.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, HomPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_scalar_multiple_of(self, other: "HomPoly") -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.terms) != set(other.terms):
            return False
        k0 = next(iter(self.terms))
        ratio = self.terms[k0] / other.terms[k0]
        return all(self.terms[k] == ratio * other.terms[k] for k in self.terms)

    def compose(self, comps: Sequence[XPoly]) -> XPoly:
        """Q(f_0, ..., f_n) as a polynomial in x."""
        if len(comps) != self.nvars:
            raise ValueError("component count does not match the number of variables")
        cache: dict[tuple[int, int], XPoly] = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = comps[i] ** e
            return cache[(i, e)]

        out = XPoly()
        for exps, c in self.terms.items():
            term = XPoly([c])
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def evaluate_np(self, values: Sequence[np.ndarray]) -> np.ndarray:
        """Evaluate at numpy arrays (one per variable), broadcasting."""
        vals = [np.asarray(v, dtype=complex) for v in values]
        out = np.zeros(np.broadcast(*vals).shape, dtype=complex)
        for exps, c in self.terms.items():
            term = np.full(out.shape, float(c), dtype=complex)
            for v, e in zip(vals, exps):
                if e:
                    term = term * v**e
            out = out + term
        return out

    def __call__(self, *values):
        vals = [to_q(v) for v in values]
        total = to_q(0)
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(vals, exps):
                term = term * v**e
            total += term
        return total

    def to_json(self):
        return {"nvars": self.nvars, "terms": [[list(k), q_str(v)] for k, v in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data) -> "HomPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["nvars"], {tuple(k): str(v) for k, v in data["terms"]})

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            parts.append(f"{q_str(c)}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"HomPoly({self.render()!r})"


def product(polys: Iterable[HomPoly], nvars: int) -> HomPoly:
    out = HomPoly.constant(1, nvars)
    for p in polys:
        out = out * p
    return out
