"""Nevanlinna functionals for polynomial data and truncated counting functions.

Circle averages are taken in the x-plane on |x| = r.  Functions stored in
the z-model are evaluated at the branch z = x + sqrt(x^2 - 1) with |z| >= 1,
which is where the shifts act as on the algebraic model.

Vanishing orders are exact (synthetic division at planted points).
Integrated counts of truncated type rely on one identity: the smallest
order among several polynomials at a point is the order of their gcd
there.  The shifted-order minimum from the order lemma then becomes
N(r, gcd_k eta^k g), and that gcd is computed exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .awops import AwContext, diff_power, mixed, shift, x_of_z, z_of_x
from .errors import CurveInHypersurface, GuardViolation, QuadratureDegenerate, ZeroFunction
from .qcore import (
    DEFAULT_CLUSTER_TOL,
    GaussPoint,
    HomPoly,
    Laurent,
    RatFunc,
    XPoly,
    as_ratfunc,
    order_at,
    roots_numeric,
    to_q,
    to_symlaurent,
)
from .qcore.laurent import poly_divmod, poly_gcd
from .reports import Report

__all__ = [
    "ProjCurveRep",
    "Hypersurface",
    "RGrid",
    "ZeroList",
    "counting_N",
    "proximity_m",
    "characteristic_T",
    "characteristic_T_curve",
    "circle_mean",
    "fmt_check",
    "delta",
    "trunc_classical",
    "trunc_aw_M",
    "trunc_aw_cf",
    "verify_lemma53",
    "lemma53_sides",
    "verify_order_superadditivity",
    "superadditivity_report",
    "shift_gcd",
    "aw_truncated_zero_lists",
    "truncated_N_aw",
    "growth_trend",
    "rat_order",
]

SINGULAR_TOL = 1e-12
DEGENERATE_FRACTION = 0.01


# -- data types ---------------------------------------------------------------


def _xpoly_gcd(polys: Sequence[XPoly]) -> list:
    g: list = []
    for p in polys:
        g = poly_gcd(g, list(p.coeffs)) if g else list(p.coeffs)
        if len(g) == 1:
            break
    return g


@dataclass(frozen=True)
class ProjCurveRep:
    """Reduced representation (f_0, ..., f_n) of a curve into P^n, components polynomial in x."""

    components: tuple
    ctx: AwContext = field(default_factory=AwContext.from_s)

    def __post_init__(self):
        comps = tuple(_as_xpoly(c) for c in self.components)
        if not comps:
            raise ValueError("a curve needs at least one component")
        if all(c.is_zero() for c in comps):
            raise ValueError("all components vanish")
        if len(_xpoly_gcd([c for c in comps if not c.is_zero()])) > 1:
            raise ValueError("components share a zero; the representation is not reduced")
        object.__setattr__(self, "components", comps)

    @property
    def n(self) -> int:
        return len(self.components) - 1

    def is_constant(self) -> bool:
        # reduced: proportional components would share their common factor
        return all(c.is_constant() for c in self.components)

    def values(self, x: np.ndarray) -> np.ndarray:
        """Component values, shape (n+1, *x.shape)."""
        return np.stack([c.evaluate_np(x) for c in self.components])

    def norm(self, x: np.ndarray) -> np.ndarray:
        return np.max(np.abs(self.values(x)), axis=0)

    def models(self) -> list[RatFunc]:
        """z-models of the components."""
        return [RatFunc.poly(to_symlaurent(c)) for c in self.components]


def _as_xpoly(c) -> XPoly:
    if isinstance(c, XPoly):
        return c
    if isinstance(c, str):
        from .qcore import parse_xpoly

        return parse_xpoly(c)
    return XPoly([c])


@dataclass(frozen=True)
class Hypersurface:
    """D = {Q = 0} with optional irreducible factorization [(factor, multiplicity)]."""

    Q: HomPoly
    factors: tuple | None = None

    def __post_init__(self):
        if self.Q.is_zero() or not self.Q.is_homogeneous() or self.Q.degree < 1:
            raise ValueError("Q must be a nonzero homogeneous polynomial of positive degree")
        if self.factors is not None:
            facs = tuple((f, int(m)) for f, m in self.factors)
            prod = HomPoly.constant(1, self.Q.nvars)
            for f, m in facs:
                if m < 1 or not f.is_homogeneous() or f.degree < 1:
                    raise ValueError("factors must be homogeneous of positive degree with multiplicity >= 1")
                prod = prod * f**m
            if not prod.is_scalar_multiple_of(self.Q):
                raise ValueError("factor product does not match Q up to a scalar")
            object.__setattr__(self, "factors", facs)

    @classmethod
    def from_factors(cls, factors) -> "Hypersurface":
        factors = tuple((f, int(m)) for f, m in factors)
        nvars = factors[0][0].nvars
        q = HomPoly.constant(1, nvars)
        for f, m in factors:
            q = q * f**m
        return cls(q, factors)

    @classmethod
    def hyperplane(cls, coeffs) -> "Hypersurface":
        L = HomPoly.linear(coeffs)
        return cls(L, ((L, 1),))

    @property
    def degree(self) -> int:
        return self.Q.degree

    @property
    def nvars(self) -> int:
        return self.Q.nvars

    @property
    def distinct_factor_count(self) -> int:
        if self.factors is None:
            raise ValueError("factorization not supplied")
        return len(self.factors)

    def norm(self) -> float:
        return self.Q.norm()

    def pullback(self, curve: ProjCurveRep) -> XPoly:
        """Q(f) as a polynomial in x."""
        return self.Q.compose(curve.components)


@dataclass(frozen=True)
class RGrid:
    """Radii for sampling and the number of quadrature nodes per circle."""

    radii: tuple
    theta_points: int = 2048

    def __post_init__(self):
        radii = tuple(float(r) for r in self.radii)
        if not radii:
            raise ValueError("empty radius grid")
        if any(r <= 1 for r in radii):
            raise ValueError("all radii must exceed 1")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("radii must be strictly increasing")
        if int(self.theta_points) < 64:
            raise ValueError("theta_points must be at least 64")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "theta_points", int(self.theta_points))

    @classmethod
    def geometric(cls, lo=10.0, hi=1e4, steps=25, theta_points=2048, ctx: AwContext | None = None, shifts: int = 0) -> "RGrid":
        grid = cls(tuple(np.geomspace(lo, hi, steps)), theta_points)
        if ctx is not None:
            grid.require_guard(ctx, shifts)
        return grid

    def require_guard(self, ctx: AwContext, shifts: int):
        # on |x| = r the branch satisfies |z| >= r, so r above the guard is enough
        g = ctx.guard_radius(shifts)
        if self.radii[0] <= g:
            raise GuardViolation(f"radius {self.radii[0]:.6g} is not above the guard radius {g:.6g}")

    def top_half(self) -> tuple:
        return self.radii[len(self.radii) // 2 :]

    def to_json(self):
        return {"radii": list(self.radii), "theta_points": self.theta_points}


@dataclass(frozen=True)
class ZeroList:
    """Zero moduli with multiplicities, plus the multiplicity at the origin."""

    entries: tuple = ()
    origin_mult: int = 0

    def __post_init__(self):
        ents = tuple(sorted((float(m), int(k)) for m, k in self.entries))
        if any(m <= 0 or k < 1 for m, k in ents):
            raise ValueError("moduli must be positive and multiplicities at least 1")
        object.__setattr__(self, "entries", ents)

    @property
    def total(self) -> int:
        return self.origin_mult + sum(k for _, k in self.entries)

    @classmethod
    def from_xpoly(cls, p: XPoly, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> "ZeroList":
        if p.is_zero():
            raise ZeroFunction("zero list of the zero polynomial")
        cs = list(p.coeffs)
        k = 0
        while cs[k] == 0:
            k += 1
        rest = Laurent.from_dense(0, cs[k:])
        entries = [(abs(r), m) for r, m in roots_numeric(rest, cluster_tol)] if rest.width > 0 else []
        return cls(tuple(entries), k)

    @classmethod
    def from_z_model(cls, g: Laurent, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> "ZeroList":
        """x-plane zeros of a z-model function, read on the branch |z| >= 1.

        On the unit circle the branch is taken with Im z >= 0, so each x in
        [-1, 1] is counted once.
        """
        if g.is_zero():
            raise ZeroFunction("zero list of the zero function")
        entries = []
        if g.width > 0:
            for z, m in roots_numeric(g, cluster_tol):
                az = abs(z)
                if az > 1 + 1e-9 or (az >= 1 - 1e-9 and z.imag >= -1e-12):
                    x = (z + 1 / z) / 2
                    entries.append((abs(x), m))
        origin = sum(m for r, m in entries if r < 1e-14)
        return cls(tuple((r, m) for r, m in entries if r >= 1e-14), origin)

    def to_json(self):
        return {"entries": [list(e) for e in self.entries], "origin_mult": self.origin_mult}


# -- counting, proximity, characteristic -------------------------------------


def counting_N(zeros: ZeroList, r: float) -> float:
    """sum over 0 < |a| <= r of log(r/|a|), plus origin_mult * log r."""
    if r <= 0:
        raise ValueError("r must be positive")
    total = zeros.origin_mult * math.log(r)
    for m, k in zeros.entries:
        if m > r:
            break
        total += k * math.log(r / m)
    return total


def circle_mean(
    log_values: Callable[[np.ndarray], np.ndarray],
    r: float,
    theta_points: int,
    singular: Callable[[np.ndarray], np.ndarray] | None = None,
) -> float:
    """Trapezoid mean of log_values(x) over |x| = r.

    Nodes flagged by ``singular`` (or giving a non-finite value) are moved
    half a step; more than 1% of such nodes raises QuadratureDegenerate.
    """
    n = theta_points
    theta = 2 * np.pi * np.arange(n) / n
    x = r * np.exp(1j * theta)
    bad = np.zeros(n, dtype=bool) if singular is None else np.asarray(singular(x), dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.asarray(log_values(x), dtype=float)
    bad |= ~np.isfinite(vals)
    nbad = int(bad.sum())
    if nbad > DEGENERATE_FRACTION * n:
        raise QuadratureDegenerate(f"{nbad} of {n} nodes needed perturbation at r = {r:g}")
    if nbad:
        xs = r * np.exp(1j * (theta[bad] + np.pi / n))
        with np.errstate(divide="ignore", invalid="ignore"):
            vals[bad] = np.asarray(log_values(xs), dtype=float)
        if not np.all(np.isfinite(vals)):
            raise QuadratureDegenerate(f"perturbed nodes are still singular at r = {r:g}")
    # fixed summation order keeps results bit-stable
    return float(math.fsum(vals) / n)


def _numeric_parts(f):
    """(numerator, denominator) evaluators in the x-plane."""
    if isinstance(f, XPoly):
        return f.evaluate_np, None
    if callable(f) and not isinstance(f, (RatFunc, Laurent)):
        return f, None
    f = as_ratfunc(f)
    num = lambda x: f.num.evaluate_np(z_of_x(x))  # noqa: E731
    if f.is_polynomial():
        den_c = complex(float(f.den.cs[0]))
        return (lambda x: num(x) / den_c), None
    return num, (lambda x: f.den.evaluate_np(z_of_x(x)))


def proximity_m(f, r: float, grid: RGrid | None = None, theta_points: int | None = None) -> float:
    """m(r, f): circle mean of log+ |f| on |x| = r."""
    n = theta_points or (grid.theta_points if grid else 2048)
    num, den = _numeric_parts(f)

    def logplus(x):
        v = num(x) if den is None else num(x) / den(x)
        with np.errstate(divide="ignore"):
            return np.maximum(np.log(np.abs(v)), 0.0)

    singular = None if den is None else (lambda x: np.abs(den(x)) < SINGULAR_TOL)
    return circle_mean(logplus, r, n, singular)


def characteristic_T(f, r: float, grid: RGrid | None = None) -> float:
    """T(r, f) = m(r, f) + N(r, f) for a polynomial or rational function of x."""
    m = proximity_m(f, r, grid)
    if isinstance(f, XPoly):
        return m
    f = as_ratfunc(f)
    if f.is_polynomial():
        return m
    return m + counting_N(ZeroList.from_z_model(f.den.shift_exp(-f.den.lo)), r)


def characteristic_T_curve(curve: ProjCurveRep, r: float, grid: RGrid | None = None) -> float:
    """T_f(r): circle mean of log max_k |f_k|."""
    n = grid.theta_points if grid else 2048
    return circle_mean(lambda x: np.log(curve.norm(x)), r, n)


def fmt_check(curve: ProjCurveRep, D: Hypersurface, grid: RGrid, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Report:
    """Rows (r, m, N, T, deviation) with deviation = m + N - d T; meta holds the spread."""
    if D.nvars != curve.n + 1:
        raise ValueError("hypersurface and curve live in different projective spaces")
    pulled = D.pullback(curve)
    if pulled.is_zero():
        raise CurveInHypersurface("Q(f) vanishes identically")
    zeros = ZeroList.from_xpoly(pulled, cluster_tol)
    d, qnorm = D.degree, D.norm()
    qf = pulled.evaluate_np

    report = Report("fmt", ["r", "m", "N", "T", "deviation"])

    def lam(x):
        with np.errstate(divide="ignore"):
            return d * np.log(curve.norm(x)) + math.log(qnorm) - np.log(np.abs(qf(x)))

    for r in grid.radii:
        m = circle_mean(lam, r, grid.theta_points, lambda x: np.abs(qf(x)) < SINGULAR_TOL)
        N = counting_N(zeros, r)
        T = characteristic_T_curve(curve, r, grid)
        report.add(r, m, N, T, m + N - d * T)
    dev = report.column("deviation")
    report.meta.update(
        spread=max(dev) - min(dev),
        degree=d,
        q_norm=qnorm,
        theta_points=grid.theta_points,
        s=str(curve.ctx.s),
        grid=grid.to_json(),
        cluster_tol=cluster_tol,
    )
    return report


# -- exact orders -------------------------------------------------------------


def rat_order(f, point) -> float:
    """Order of a z-model function at a nonzero point (negative at poles, inf for f = 0)."""
    f = as_ratfunc(f)
    if f.is_zero():
        return math.inf
    out = order_at(f.num, point)
    if not f.is_polynomial():
        out -= order_at(f.den, point)
    return out


def delta(M: int) -> int:
    """-1 for odd M, 0 for even M."""
    return -1 if M % 2 else 0


def _gauss(p) -> GaussPoint:
    return p if isinstance(p, GaussPoint) else GaussPoint.of(p if isinstance(p, complex) else to_q(p))


def _check_points(points, ctx: AwContext, shifts: int) -> list[GaussPoint]:
    pts = [_gauss(p) for p in points]
    for p in pts:
        ctx.check_guard(p, shifts)
    return pts


def trunc_classical(f, a, M: int, zeros: Sequence, r: float | None = None) -> int:
    """sum of min(order of f - a, M) over the supplied points (|point| < r when r is given)."""
    if M < 1:
        raise ValueError("M must be positive")
    g = f - to_q(a)
    g = g.as_laurent() if isinstance(g, XPoly) else g
    total = 0
    for p in zeros:
        p = _gauss(p)
        if r is not None and abs(p) >= r:
            continue
        total += min(order_at(g, p), M)
    return total


def _aw_trunc_point(g: RatFunc, M: int, p: GaussPoint, ctx: AwContext, family) -> int:
    base = rat_order(shift(g, delta(M), ctx), p)
    low = min(rat_order(h, p) for h in family)
    return int(base - low)


def trunc_aw_M(f, a, M: int, query_points: Sequence, ctx: AwContext) -> int:
    """Askey-Wilson truncated count at level M, summed over exact z-model points."""
    if M < 1:
        raise ValueError("M must be positive")
    pts = _check_points(query_points, ctx, M)
    g = as_ratfunc(f) - to_q(a)
    family = [mixed(g, M, t, ctx) for t in range(M + 1)]
    return sum(_aw_trunc_point(g, M, p, ctx, family) for p in pts)


def trunc_aw_cf(f, a, query_points: Sequence, ctx: AwContext, form: int = 1) -> int:
    """Truncated count with min{order of g, order of eta D g} (form 1) or eta^2 g (form 2)."""
    pts = _check_points(query_points, ctx, 2)
    g = as_ratfunc(f) - to_q(a)
    if form == 1:
        other = shift(diff_power(g, 1, ctx), 1, ctx)
    elif form == 2:
        other = shift(g, 2, ctx)
    else:
        raise ValueError("form must be 1 or 2")
    total = 0
    for p in pts:
        o = rat_order(g, p)
        total += int(o - min(o, rat_order(other, p)))
    return total


def lemma53_sides(f, M: int, point, ctx: AwContext) -> tuple:
    """(min_t order of A_{q^(M-t)} D^t f, min_t order of eta^(M-2t) f) at one point."""
    (p,) = _check_points([point], ctx, M)
    f = as_ratfunc(f)
    left = min(rat_order(mixed(f, M, t, ctx), p) for t in range(M + 1))
    right = min(rat_order(shift(f, M - 2 * t, ctx), p) for t in range(M + 1))
    return left, right


def verify_lemma53(f, M: int, query_points: Sequence, ctx: AwContext) -> bool:
    f = as_ratfunc(f)
    pts = _check_points(query_points, ctx, M)
    mixed_family = [mixed(f, M, t, ctx) for t in range(M + 1)]
    shift_family = [shift(f, M - 2 * t, ctx) for t in range(M + 1)]
    for p in pts:
        left = min(rat_order(h, p) for h in mixed_family)
        right = min(rat_order(h, p) for h in shift_family)
        if left != right:
            return False
    return True


def _min_mixed_order(f, M, p, ctx):
    return min(rat_order(mixed(f, M, t, ctx), p) for t in range(M + 1))


def _classical_min(poly: Laurent, K: int, x0) -> float:
    out = math.inf
    cur = list(poly.cs)
    for _ in range(K + 1):
        if not cur:
            break
        out = min(out, order_at(Laurent.from_dense(0, cur), x0))
        cur = [c * k for k, c in enumerate(cur)][1:]
        while cur and cur[-1] == 0:
            cur.pop()
    return out


def superadditivity_report(factors: Sequence, M: int, query_points: Sequence, ctx: AwContext) -> dict:
    """Per-point AW superadditivity plus, for x-polynomial factors, the derivative chain."""
    pts = _check_points(query_points, ctx, M)
    factors = [as_ratfunc(f) for f in factors]
    prod = RatFunc(1)
    for f in factors:
        prod = prod * f
    rows = []
    aw_ok = True
    for p in pts:
        lhs = _min_mixed_order(prod, M, p, ctx)
        rhs = sum(_min_mixed_order(f, M, p, ctx) for f in factors)
        aw_ok &= lhs >= rhs
        rows.append({"point": repr(p), "aw_lhs": lhs, "aw_rhs": rhs})

    classical = None
    if all(f.is_polynomial() and f.num.is_symmetric() for f in factors):
        from .qcore import from_symlaurent

        xs = [from_symlaurent(f.num).as_laurent() for f in factors]
        xprod = Laurent.constant(1)
        for g in xs:
            xprod = xprod * g
        m = len(xs)
        classical = True
        for row, p in zip(rows, pts):
            x0 = x_of_z(p)
            a = _classical_min(xprod, M, x0)
            b = sum(_classical_min(g, M, x0) for g in xs)
            c = _classical_min(xprod, m * M, x0)
            row.update(classical=(a, b, c))
            classical &= a >= b >= c
    return {"aw": aw_ok, "classical": classical, "rows": rows}


def verify_order_superadditivity(factors: Sequence, M: int, query_points: Sequence, ctx: AwContext) -> bool:
    rep = superadditivity_report(factors, M, query_points, ctx)
    return rep["aw"] and rep["classical"] is not False


# -- integrated truncated counts ----------------------------------------------


def shift_gcd(G: Laurent, M: int, ctx: AwContext) -> Laurent:
    """gcd of eta^(M-2t) G over t = 0..M, monic with min exponent 0.

    Its order at any nonzero point is the minimum of the shifted orders.
    The points s^k z are distinct, so once M + 1 exceeds the root count the
    gcd is 1; the loop also stops as soon as the running gcd is constant.
    """
    if G.is_zero():
        raise ZeroFunction("shift gcd of the zero function")
    if M + 1 > G.width:
        return Laurent.constant(1)
    g = list(G.scale_var(ctx.q.power(M)).cs)
    for t in range(1, M + 1):
        g = poly_gcd(g, list(G.scale_var(ctx.q.power(M - 2 * t)).cs))
        if len(g) <= 1:
            return Laurent.constant(1)
    return Laurent.from_dense(0, g)


def aw_truncated_zero_lists(g, M: int, ctx: AwContext, cluster_tol: float = DEFAULT_CLUSTER_TOL):
    """(zeros of eta^delta(M) g, zeros of the shift gcd) as x-plane ZeroLists."""
    G = _z_model(g)
    full = G.scale_var(ctx.q.power(delta(M))) if delta(M) else G
    return ZeroList.from_z_model(full, cluster_tol), ZeroList.from_z_model(shift_gcd(G, M, ctx), cluster_tol)


def truncated_N_aw(g, M: int, r: float, ctx: AwContext, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> float:
    """Integrated AW count of zeros of g truncated at level M."""
    full, cancelled = aw_truncated_zero_lists(g, M, ctx, cluster_tol)
    return counting_N(full, r) - counting_N(cancelled, r)


def _z_model(g) -> Laurent:
    if isinstance(g, XPoly):
        return to_symlaurent(g)
    if isinstance(g, Laurent):
        return g
    g = as_ratfunc(g)
    return g.as_laurent()


# -- empirical growth ------------------------------------------------------------


def growth_trend(f, kind: str, grid: RGrid, ctx: AwContext, n: int = 1, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Report:
    """Sample m(r, D^n f / f), m(r, A_{q^n} f / f) or the shift change in N(r, 1/f).

    Reports value / (T(r, f) / log log r); no pass/fail verdict.
    """
    if kind not in ("ld_dq", "ld_avg", "shift_N"):
        raise ValueError(f"unknown growth kind {kind!r}")
    grid.require_guard(ctx, n)
    f = as_ratfunc(f)
    if f.is_zero():
        raise ZeroFunction("growth of the zero function")
    report = Report("growth", ["r", "value", "T", "ratio"], meta={"kind": kind, "n": n, "s": str(ctx.s)})
    if kind == "ld_dq":
        target = diff_power(f, n, ctx) / f
    elif kind == "ld_avg":
        from .awops import aw_avg

        target = aw_avg(f, n, ctx) / f
    else:
        target = None
        base = ZeroList.from_z_model(f.num, cluster_tol) if not f.num.is_constant() else ZeroList()
        shifted = [
            ZeroList.from_z_model(f.num.scale_var(ctx.q.power(k)), cluster_tol) if not f.num.is_constant() else ZeroList()
            for k in (1, -1)
        ]
    for r in grid.radii:
        T = characteristic_T(f, r, grid)
        if target is not None:
            value = proximity_m(target, r, grid)
        else:
            value = max(abs(counting_N(z, r) - counting_N(base, r)) for z in shifted)
        scale = T / math.log(math.log(r))
        ratio = 0.0 if value == 0 else (value / scale if scale > 0 else math.inf)
        report.add(r, value, T, ratio)
    return report
