"""Exact determinants and ranks over any field-like element type."""

from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .scalars import to_q

__all__ = ["det_cofactor", "det_bareiss", "determinant", "rank", "perm_sign"]


def perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_cofactor(m: Sequence[Sequence]):
    """Laplace expansion along the first row."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        if _is_zero(m[0][j]):
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else m[0][0] * 0


def det_bareiss(m: Sequence[Sequence]):
    """Fraction-free elimination with row pivoting; divisions are exact."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return a[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = v if prev is None else v / prev
        prev = a[k][k]
    out = a[n - 1][n - 1]
    return -out if sign < 0 else out


def determinant(m: Sequence[Sequence], method: str = "auto"):
    """Cofactor expansion up to 4x4, Bareiss beyond (or as requested)."""
    if method == "cofactor" or (method == "auto" and len(m) <= 4):
        return det_cofactor(m)
    if method in ("auto", "bareiss"):
        return det_bareiss(m)
    if method == "leibniz":
        n = len(m)
        total = None
        for p in permutations(range(n)):
            term = m[0][p[0]]
            for i in range(1, n):
                term = term * m[i][p[i]]
            term = term if perm_sign(p) > 0 else -term
            total = term if total is None else total + term
        return total
    raise ValueError(f"unknown determinant method {method!r}")


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    a = [[to_q(v) for v in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def _is_zero(v) -> bool:
    is_zero = getattr(v, "is_zero", None)
    if callable(is_zero):
        return is_zero()
    return v == 0
