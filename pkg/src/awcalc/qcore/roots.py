"""Exact vanishing orders and floating-point roots of Laurent polynomials."""

from __future__ import annotations

import numpy as np

from ..errors import ZeroFunction
from .laurent import Laurent, squarefree_decomposition
from .scalars import GaussPoint, to_q

__all__ = ["order_at", "roots_numeric", "DEFAULT_CLUSTER_TOL"]

DEFAULT_CLUSTER_TOL = 1e-8


def order_at(g: Laurent, z0) -> int:
    """Multiplicity of z0 as a root of g, by exact synthetic division.

    z0 may be a rational or a GaussPoint; it must be nonzero (monomial
    factors are units of the Laurent ring).
    """
    if g.is_zero():
        raise ZeroFunction("vanishing order of the zero function")
    pt = z0 if isinstance(z0, GaussPoint) else GaussPoint(to_q(z0))
    if pt.is_zero():
        raise ValueError("order_at needs a nonzero point")
    if pt.im == 0:
        return _order_real(list(g.cs), pt.re)
    cs = [GaussPoint(c) for c in g.cs]
    m = 0
    while len(cs) > 1:
        # Horner: quotient coefficients and remainder
        acc = GaussPoint(0)
        quot = []
        for c in reversed(cs):
            acc = acc * pt + c
            quot.append(acc)
        if not quot[-1].is_zero():
            break
        cs = quot[-2::-1]
        m += 1
    return m


def _order_real(cs: list, x0) -> int:
    m = 0
    while len(cs) > 1:
        acc = 0
        quot = []
        for c in reversed(cs):
            acc = acc * x0 + c
            quot.append(acc)
        if quot[-1] != 0:
            break
        cs = quot[-2::-1]
        m += 1
    return m


def roots_numeric(g: Laurent, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Roots of z**(-min_exp) * g with multiplicities.

    Multiplicities come from an exact squarefree decomposition, so repeated
    roots are never split by floating-point noise.  Roots of each squarefree
    part are companion-matrix eigenvalues, polished by Newton steps; roots
    closer than ``cluster_tol`` are then merged.
    """
    if g.is_zero():
        raise ZeroFunction("roots of the zero function")
    found: list[tuple[complex, int]] = []
    for factor, mult in squarefree_decomposition(list(g.cs)):
        coeffs = np.array([float(c) for c in reversed(factor)])
        for r in np.roots(coeffs):
            found.append((_polish(coeffs, complex(r)), mult))
    return _cluster(found, cluster_tol)


def _polish(coeffs, r: complex, steps: int = 3) -> complex:
    deriv = np.polyder(coeffs)
    for _ in range(steps):
        d = np.polyval(deriv, r)
        if d == 0:
            break
        step = np.polyval(coeffs, r) / d
        if not np.isfinite(step) or abs(step) > 1e-3 * max(1.0, abs(r)):
            break
        r = r - step
    return complex(r)


def _cluster(found, tol):
    merged: list[list] = []
    for r, m in sorted(found, key=lambda t: (t[0].real, t[0].imag)):
        for entry in merged:
            if abs(entry[0] - r) <= tol * max(1.0, abs(r)):
                entry[1] += m
                break
        else:
            merged.append([r, m])
    return [(complex(r), int(m)) for r, m in merged]
