"""Position checks, the hypersurface-SMT parameter bundle, and margin harnesses.

The harnesses evaluate both sides of the second-main-theorem inequalities
on a radius grid.  The error terms of those theorems have no computable
constants, so the verdict is a trend contract: margin(r) / T_f(r) must stay
above -slack on the top half of the grid.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial, lcm
from typing import Sequence

import mpmath
import numpy as np

from .awops import AwContext
from .decomp import DegreeMultiset, bound, greedy_decompose, polynomial_decompose
from .errors import DependentCurve, HypothesisFailed, PositionFailed, PositionHeuristicOnly, TooFew
from .nevanlinna import (
    Hypersurface,
    ProjCurveRep,
    RGrid,
    ZeroList,
    aw_truncated_zero_lists,
    characteristic_T_curve,
    circle_mean,
    counting_N,
    delta,
    shift_gcd,
)
from .qcore import DEFAULT_CLUSTER_TOL, HomPoly, Laurent, XPoly, from_symlaurent, q_str, to_q, to_symlaurent
from .qcore.laurent import poly_gcd
from .qcore.linalg import rank
from .reports import Report
from .wronskian import FunctionTuple, linearly_independent, wronskian

__all__ = [
    "HyperplaneSet",
    "SmtParams",
    "general_position_check",
    "subgeneral_position_check",
    "hypersurface_position_check",
    "filtration_params",
    "compute_smt_params",
    "algebraically_independent",
    "run_general_smt",
    "run_truncated_smt",
    "run_hypersurface_smt",
    "trend_verdict",
    "DEFAULT_SLACK",
]

DEFAULT_SLACK = 0.05
E_DIGITS = 50


# -- hyperplanes and positions -----------------------------------------------------


@dataclass(frozen=True)
class HyperplaneSet:
    """Linear forms L_j given by exact coefficient vectors of length n+1."""

    forms: tuple

    def __post_init__(self):
        forms = tuple(tuple(to_q(c) for c in f) for f in self.forms)
        if not forms:
            raise ValueError("no forms given")
        if len({len(f) for f in forms}) != 1:
            raise ValueError("forms have different lengths")
        if any(all(c == 0 for c in f) for f in forms):
            raise ValueError("zero linear form")
        object.__setattr__(self, "forms", forms)

    @property
    def p(self) -> int:
        return len(self.forms)

    @property
    def nvars(self) -> int:
        return len(self.forms[0])

    def pullbacks(self, curve: ProjCurveRep) -> list[XPoly]:
        return [HomPoly.linear(f).compose(curve.components) for f in self.forms]

    def to_json(self):
        return [[q_str(c) for c in f] for f in self.forms]


def _require(p: int, need: int):
    if p < need:
        raise TooFew(f"need at least {need} forms, got {p}")


def subgeneral_position_check(H: HyperplaneSet, n: int, l: int) -> bool:
    """Every (l+1)-subset has rank n+1, i.e. no common zero in P^n."""
    if l < n:
        raise ValueError("l must be at least n")
    if H.nvars != n + 1:
        raise ValueError(f"forms must have {n + 1} coefficients")
    _require(H.p, l + 1)
    return all(rank([H.forms[i] for i in sub]) == n + 1 for sub in combinations(range(H.p), l + 1))


def general_position_check(H: HyperplaneSet, n: int) -> bool:
    """Every (n+1)-subset of forms is linearly independent."""
    return subgeneral_position_check(H, n, n)


def _binary_common_zero(polys: Sequence[HomPoly]) -> bool:
    """Do binary forms share a zero in P^1?  Exact via gcd of dehomogenizations."""
    # the point [0:1]: every form lacks the pure x1^d term
    if all(p.terms.get((0, p.degree), 0) == 0 for p in polys):
        return True
    g: list = []
    for p in polys:
        cs = [to_q(0)] * (p.degree + 1)
        for (a, b), c in p.terms.items():
            cs[b] += c  # Q(1, t) = sum c t^b
        while cs and cs[-1] == 0:
            cs.pop()
        g = poly_gcd(g, cs) if g else cs
        if len(g) == 1:
            return False
    return len(g) > 1


def hypersurface_position_check(Ds: Sequence[Hypersurface], n: int, l: int, samples: int = 2000, seed: int = 0) -> tuple[bool, bool]:
    """(in position, exact?) for l-subgeneral position of hypersurfaces in P^n.

    Exact for hyperplanes (rank) and for n = 1 (gcd of binary forms).
    Otherwise random points on the unit sphere are sampled and a subset
    whose forms all nearly vanish at a sample counts as a failure; a pass
    is only heuristic and is reported as such.
    """
    if len(Ds) < l + 1:
        raise TooFew(f"need at least {l + 1} hypersurfaces")
    if all(D.degree == 1 for D in Ds):
        H = HyperplaneSet(tuple(tuple(D.Q.terms.get(tuple(int(i == j) for j in range(n + 1)), 0) for i in range(n + 1)) for D in Ds))
        return subgeneral_position_check(H, n, l), True
    if n == 1:
        ok = not any(_binary_common_zero([Ds[i].Q for i in sub]) for sub in combinations(range(len(Ds)), l + 1))
        return ok, True
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(samples, n + 1)) + 1j * rng.normal(size=(samples, n + 1))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    vals = np.array([np.abs(D.Q.evaluate_np(list(pts.T))) / max(D.norm(), 1e-300) for D in Ds])
    for sub in combinations(range(len(Ds)), l + 1):
        if np.min(np.max(vals[list(sub)], axis=0)) < 1e-9:
            return False, False
    return True, False


# -- parameters ----------------------------------------------------------------


def _ceil(x) -> int:
    x = Fraction(str(x)) if not isinstance(x, (int, Fraction)) else Fraction(x)
    return -((-x.numerator) // x.denominator)


def _iv_e():
    """Euler's number as a 50-digit interval."""
    saved = mpmath.iv.dps
    mpmath.iv.dps = E_DIGITS
    try:
        return mpmath.iv.e * 1
    finally:
        mpmath.iv.dps = saved


@dataclass(frozen=True)
class SmtParams:
    n: int
    l: int
    p: int
    d_js: tuple
    s_js: tuple
    s_prime: int
    d: int
    dhat: int
    alpha: Fraction
    beta: Fraction | None
    eps: Fraction
    N: int
    M: int
    M1: int
    Omega: int
    certificates: dict = field(default_factory=dict)

    @property
    def hypothesis_holds(self) -> bool:
        return self.beta is None or self.beta * (self.alpha + 1) >= self.alpha

    def to_json(self) -> dict:
        out = asdict(self)
        for k in ("alpha", "beta", "eps"):
            out[k] = None if out[k] is None else str(out[k])
        out["d_js"], out["s_js"] = list(self.d_js), list(self.s_js)
        return out

    @classmethod
    def from_json(cls, data) -> "SmtParams":
        data = dict(data)
        for k in ("alpha", "beta", "eps"):
            data[k] = None if data[k] is None else Fraction(data[k])
        data["d_js"], data["s_js"] = tuple(data["d_js"]), tuple(data["s_js"])
        return cls(**data)


def filtration_params(n: int, dhat: int, alpha, eps, d: int | None = None) -> dict:
    """N, M, Omega and M1 with their certificates.

    d defaults to dhat (the smallest admissible degree when dhat <= 2).
    """
    alpha, eps = Fraction(str(alpha)), Fraction(str(eps))
    if n < 1 or dhat < 1 or eps <= 0 or alpha < 0:
        raise ValueError("need n >= 1, dhat >= 1, eps > 0, alpha >= 0")
    d = dhat if d is None else int(d)
    if dhat > factorial(d):
        raise ValueError("dhat must not exceed d!")
    ca, ce = _ceil(alpha + 1), _ceil(1 / eps)
    N = ca * (n + 1) ** 3 * dhat * ce + (n + 1) * dhat
    M = comb(N + n, n)
    num = 1
    for k in range(n + 1):
        num *= N - k * dhat
    den = dhat * factorial(n + 1)
    omega_exact = Fraction(num, den)
    Omega = int(omega_exact)

    saved = mpmath.iv.dps
    mpmath.iv.dps = E_DIGITS
    try:
        bound_iv = 4 * (_iv_e() * (ca * (n + 1) ** 2 * factorial(d) * ce)) ** n
        lo, hi = mpmath.mpf(bound_iv.a), mpmath.mpf(bound_iv.b)
    finally:
        mpmath.iv.dps = saved
    m1_lo, m1_hi = int(mpmath.floor(lo - 1)), int(mpmath.floor(hi - 1))

    y_star = Fraction((n + 1) * dhat, N - (n + 1) * dhat)
    ratio = Fraction(N * M, dhat * Omega)
    target = (n + 1) + eps / (alpha + 1)
    certs = {
        "N_divisible_by_dhat": N % dhat == 0,
        "Omega_integer": omega_exact.denominator == 1,
        "ratio": f"{ratio.numerator}/{ratio.denominator}",
        "ratio_bound": f"{target.numerator}/{target.denominator}",
        "ratio_le_bound": ratio <= target,
        "y_star_in_range": 0 <= y_star <= Fraction(1, n * (n + 1)),
        "binomial_inequality_grid": binomial_inequality_grid(n) if n <= 10 else None,
        "M_le_bound": bool(M <= lo),
        "M1_certified": m1_lo == m1_hi,
    }
    return {"N": N, "M": M, "Omega": Omega, "M1": m1_lo, "d": d, "certificates": certs}


def binomial_inequality_grid(n: int, points: int = 64) -> bool:
    """(1+y)^n <= 1 + (n+1) y on an exact rational grid of [0, 1/(n(n+1))]."""
    top = Fraction(1, n * (n + 1))
    return all((1 + top * k / points) ** n <= 1 + (n + 1) * top * k / points for k in range(points + 1))


def _block_degrees(factor_degrees: Sequence[Sequence[int]], d: int, d_js: Sequence[int], s_prime: int) -> list[int]:
    out = []
    for fd, dj in zip(factor_degrees, d_js):
        k = d // dj
        dec, _ = greedy_decompose(DegreeMultiset(tuple(x * k for x in fd)), s_prime)
        out.extend(dec.bin_degrees)
    return out


def compute_smt_params(n: int, l: int, d_js: Sequence[int], s_js: Sequence[int], s_prime: int, eps, factor_degrees=None, strict: bool = True) -> SmtParams:
    """Fill in alpha, beta, d, dhat, N, M, M1 and Omega.

    ``factor_degrees`` (per hypersurface, with multiplicities folded in)
    gives dhat as lcm of the block degrees and d; without it dhat = d!.
    Raises HypothesisFailed when beta(alpha+1) < alpha unless strict is off.
    """
    d_js, s_js = tuple(int(x) for x in d_js), tuple(int(x) for x in s_js)
    if len(d_js) != len(s_js) or not d_js:
        raise ValueError("d_j and s_j lists must be nonempty and equally long")
    if l < n:
        raise ValueError("l must be at least n")
    if not 1 <= s_prime <= min(n, min(s_js)):
        raise ValueError("need 1 <= s' <= min(n, min s_j)")
    eps = Fraction(str(eps))
    if eps <= 0:
        raise ValueError("eps must be positive")
    d = lcm(*d_js)
    unit_alpha = max(Fraction(bound(dj, sj, s_prime), dj) for dj, sj in zip(d_js, s_js))
    alpha = unit_alpha * (l - n)
    # beta with the common factor (l - n) cancelled, so l = n is covered
    beta = unit_alpha * d / max(bound(d, sj, s_prime) for sj in s_js)
    if factor_degrees is None:
        dhat = factorial(d)
    else:
        dhat = lcm(*_block_degrees(factor_degrees, d, d_js, s_prime), d)
    fp = filtration_params(n, dhat, alpha, eps, d)
    params = SmtParams(
        n=n, l=l, p=len(d_js), d_js=d_js, s_js=s_js, s_prime=s_prime, d=d, dhat=dhat,
        alpha=alpha, beta=beta, eps=eps, N=fp["N"], M=fp["M"], M1=fp["M1"], Omega=fp["Omega"],
        certificates=fp["certificates"],
    )  # fmt: skip
    if strict and not params.hypothesis_holds:
        raise HypothesisFailed(f"beta(alpha+1) = {beta * (alpha + 1)} < alpha = {alpha}")
    return params


# -- margin harnesses ------------------------------------------------------------


def trend_verdict(report: Report, slack: float = DEFAULT_SLACK, column: str = "margin_over_T") -> bool:
    """margin/T >= -slack on the top half of the rows."""
    vals = report.column(column)
    top = vals[len(vals) // 2 :]
    ok = all(v >= -slack for v in top)
    report.meta.update(slack=slack, verdict="pass" if ok else "fail", worst_top_half=min(top))
    return ok


def _require_independent(curve: ProjCurveRep):
    fs = FunctionTuple.of(curve.models(), curve.ctx)
    if not linearly_independent(fs):
        raise DependentCurve("curve components are linearly dependent")
    return fs


def _wronskian_zeros(fs: FunctionTuple, cluster_tol: float) -> ZeroList:
    W = wronskian(fs)
    if W.is_zero():
        raise DependentCurve("Wronskian vanishes identically")
    if W.is_polynomial() and W.num.is_symmetric():
        xp = from_symlaurent(W.num)
        return ZeroList.from_xpoly(xp, cluster_tol) if xp.degree > 0 else ZeroList()
    return ZeroList.from_z_model(W.num, cluster_tol)


def _zero_list(p: XPoly, cluster_tol) -> ZeroList:
    return ZeroList.from_xpoly(p, cluster_tol) if p.degree > 0 else ZeroList()


def run_general_smt(curve: ProjCurveRep, H: HyperplaneSet, grid: RGrid, slack: float = DEFAULT_SLACK, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Report:
    """lhs = mean of max over independent subsets K of sum log(||f|| / |L_j(f)|) plus N_W; rhs = (n+1) T_f."""
    n = curve.n
    if H.nvars != n + 1:
        raise ValueError("forms do not match the curve dimension")
    if H.p > 8:
        raise ValueError("subset enumeration is limited to p <= 8")
    fs = _require_independent(curve)
    grid.require_guard(curve.ctx, n)
    wz = _wronskian_zeros(fs, cluster_tol)
    pulls = H.pullbacks(curve)
    if any(p.is_zero() for p in pulls):
        raise ValueError("curve lies in one of the hyperplanes")
    subsets = [
        list(sub)
        for k in range(1, min(H.p, n + 1) + 1)
        for sub in combinations(range(H.p), k)
        if rank([H.forms[i] for i in sub]) == k
    ]

    def integrand(x):
        nf = curve.norm(x)
        terms = np.array([np.log(nf) - np.log(np.abs(p.evaluate_np(x))) for p in pulls])
        return np.max(np.array([terms[s].sum(axis=0) for s in subsets]), axis=0)

    report = Report("general_smt", ["r", "lhs", "rhs", "margin", "margin_over_T"])
    for r in grid.radii:
        T = characteristic_T_curve(curve, r, grid)
        lhs = circle_mean(integrand, r, grid.theta_points) + counting_N(wz, r)
        rhs = (n + 1) * T
        report.add(r, lhs, rhs, rhs - lhs, (rhs - lhs) / T)
    report.meta.update(n=n, p=H.p, forms=H.to_json(), s=str(curve.ctx.s), grid=grid.to_json())
    trend_verdict(report, slack)
    return report


def run_truncated_smt(curve: ProjCurveRep, H: HyperplaneSet, grid: RGrid, slack: float = DEFAULT_SLACK, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Report:
    """(p - n - 1) T_f against sum N(r, 1/L_j(f)) - N_W and against the level-n AW truncated sum."""
    n = curve.n
    if not general_position_check(H, n):
        raise PositionFailed("hyperplanes are not in general position")
    fs = _require_independent(curve)
    grid.require_guard(curve.ctx, n)
    wz = _wronskian_zeros(fs, cluster_tol)
    pulls = H.pullbacks(curve)
    if any(p.is_zero() for p in pulls):
        raise ValueError("curve lies in one of the hyperplanes")
    plain = [_zero_list(p, cluster_tol) for p in pulls]
    trunc = [aw_truncated_zero_lists(p, n, curve.ctx, cluster_tol) if p.degree > 0 else (ZeroList(), ZeroList()) for p in pulls]
    report = Report(
        "truncated_smt",
        ["r", "lhs", "rhs_plain", "rhs_trunc", "margin_plain", "margin_trunc", "margin_over_T"],
    )
    for r in grid.radii:
        T = characteristic_T_curve(curve, r, grid)
        lhs = (H.p - n - 1) * T
        rhs_plain = sum(counting_N(z, r) for z in plain) - counting_N(wz, r)
        rhs_trunc = sum(counting_N(a, r) - counting_N(b, r) for a, b in trunc)
        m1, m2 = rhs_plain - lhs, rhs_trunc - lhs
        report.add(r, lhs, rhs_plain, rhs_trunc, m1, m2, min(m1, m2) / T)
    report.meta.update(n=n, p=H.p, forms=H.to_json(), s=str(curve.ctx.s), truncation_level=n, grid=grid.to_json())
    trend_verdict(report, slack)
    return report


def algebraically_independent(curve: ProjCurveRep, relation_degree: int | None = None) -> bool:
    """No homogeneous relation of degree 1..relation_degree among the components (exact rank)."""
    comps = curve.components
    if relation_degree is None:
        relation_degree = 2 * max(c.degree for c in comps)
    nv = len(comps)
    for k in range(1, relation_degree + 1):
        monos = [e for e in product(range(k + 1), repeat=nv) if sum(e) == k]
        polys = [HomPoly(nv, {e: 1}).compose(comps) for e in monos]
        width = max(p.degree for p in polys) + 1
        rows = [list(p.coeffs) + [0] * (width - len(p.coeffs)) for p in polys]
        if rank(rows) < len(monos):
            return False
    return True


def run_hypersurface_smt(
    curve: ProjCurveRep,
    hypersurfaces: Sequence[Hypersurface],
    s_prime: int,
    l: int,
    eps,
    grid: RGrid,
    slack: float = DEFAULT_SLACK,
    relation_degree: int | None = None,
    cluster_tol: float = DEFAULT_CLUSTER_TOL,
) -> Report:
    """(p - (alpha+1)(n+1) - eps) T_f against (1/d) sum_j of the s'-block truncated count of Q_j^(d/d_j)."""
    n = curve.n
    for D in hypersurfaces:
        if D.factors is None:
            raise ValueError("every hypersurface needs its factorization")
        if D.nvars != n + 1:
            raise ValueError("hypersurface and curve dimensions differ")
    d_js = [D.degree for D in hypersurfaces]
    s_js = [D.distinct_factor_count for D in hypersurfaces]
    factor_degrees = [[f.degree * m for f, m in D.factors] for D in hypersurfaces]
    params = compute_smt_params(n, l, d_js, s_js, s_prime, eps, factor_degrees=factor_degrees)

    notes = []
    if not algebraically_independent(curve, relation_degree):
        raise DependentCurve("components satisfy a polynomial relation")
    notes.append(f"algebraic independence checked up to degree {relation_degree or 2 * max(c.degree for c in curve.components)}")
    ok, exact = hypersurface_position_check(hypersurfaces, n, l)
    if not ok:
        raise PositionFailed(f"hypersurfaces are not in {l}-subgeneral position")
    if not exact:
        warnings.warn("position verified by sampling only", PositionHeuristicOnly, stacklevel=2)
        notes.append("position heuristic only")

    ctx, M1, d = curve.ctx, params.M1, params.d
    full_lists, cancel_lists, weights = [], [], []
    for D in hypersurfaces:
        k = d // D.degree
        pulled = D.pullback(curve)
        if pulled.is_zero():
            raise ValueError("curve lies in a hypersurface")
        full, _ = aw_truncated_zero_lists(pulled, M1, ctx, cluster_tol) if pulled.degree > 0 else (ZeroList(), None)
        blocks = polynomial_decompose([(f, m * k) for f, m in D.factors], s_prime)
        cancels = []
        for R in blocks:
            g = R.compose(curve.components)
            if g.degree > 0:
                H = shift_gcd(to_symlaurent(g), M1, ctx)
                if H.width > 0:
                    cancels.append(ZeroList.from_z_model(H, cluster_tol))
        full_lists.append((full, k))
        cancel_lists.append(cancels)

    coeff = params.p - (params.alpha + 1) * (n + 1) - params.eps
    report = Report("hypersurface_smt", ["r", "lhs", "rhs", "margin", "margin_over_T"])
    for r in grid.radii:
        T = characteristic_T_curve(curve, r, grid)
        lhs = float(coeff) * T
        total = 0.0
        for (full, k), cancels in zip(full_lists, cancel_lists):
            total += k * counting_N(full, r) - sum(counting_N(c, r) for c in cancels)
        rhs = total / d
        report.add(r, lhs, rhs, rhs - lhs, (rhs - lhs) / T)
    report.meta.update(
        n=n, p=params.p, s_prime=s_prime, l=l, eps=str(params.eps), alpha=str(params.alpha),
        beta=str(params.beta), M1=str(M1), delta=delta(M1), notes=notes, grid=grid.to_json(),
    )  # fmt: skip
    trend_verdict(report, slack)
    return report
