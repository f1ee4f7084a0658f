"""One test per acceptance criterion, each at its stated tolerance and time budget."""

import math
import random
import time
from fractions import Fraction
from itertools import product

from awcalc.awops import AwContext, to_xpoly, verify_product_rule, verify_quotient_rule
from awcalc.decomp import DegreeMultiset, bound, brute_force_minmax, greedy_decompose
from awcalc.nevanlinna import (
    Hypersurface,
    ProjCurveRep,
    RGrid,
    fmt_check,
    lemma53_sides,
    superadditivity_report,
)
from awcalc.qcore import HomPoly, Laurent, RatFunc, XPoly, to_symlaurent
from awcalc.smt import HyperplaneSet, filtration_params, general_position_check, run_general_smt, run_truncated_smt
from awcalc.wronskian import (
    FunctionTuple,
    linearly_independent,
    property_report,
    wronskian,
    wronskian_shift_form,
    wronskian_sign_form,
)

from conftest import random_xpoly, record_criterion

CTX = AwContext.from_s("1/2")
SEED = 20240611


def _random_multisets():
    rng = random.Random(SEED)
    out = []
    for _ in range(1000):
        s = rng.randint(1, 40)
        out.append(DegreeMultiset.of(rng.randint(1, 20) for _ in range(s)))
    return out


MULTISETS = _random_multisets()


# 1 -------------------------------------------------------------------------------


def test_criterion_01_table_reproduction():
    ds = DegreeMultiset((6, 5, 5, 5, 5, 5, 3, 2, 2, 1))
    best = math.inf
    for _ in range(20):
        t0 = time.perf_counter()
        dec, trace = greedy_decompose(ds, 3)
        best = min(best, time.perf_counter() - t0)
    rows = [r.as_tuple() for r in trace.rows]
    expected = [(6, 1, 6, 0), (31, 6, 11, 10), (31, 6, 11, 10), (34, 7, 13, 10), (38, 9, 13, 12), (39, 10, 13, 13)]
    ok = dec.bin_degrees == (13, 13, 13) and rows == expected and best < 1e-3
    record_criterion(1, ok, f"bins {dec.bin_degrees}, stage rows exact, {best * 1e3:.3f} ms")
    assert ok


# 2 -------------------------------------------------------------------------------


def test_criterion_02_greedy_bound():
    t0 = time.perf_counter()
    checked = violations = 0
    for ds in MULTISETS:
        for k in range(1, ds.s + 1):
            dec, _ = greedy_decompose(ds, k)
            checked += 1
            if dec.max_degree > bound(ds.d, ds.s, k):
                violations += 1
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 5
    record_criterion(2, ok, f"{checked} (multiset, s') pairs, {violations} violations, {elapsed:.2f} s")
    assert ok


# 3 -------------------------------------------------------------------------------


def test_criterion_03_oracle_sandwich():
    t0 = time.perf_counter()
    checked = bad = suboptimal = 0
    for ds in MULTISETS:
        if ds.s > 10:
            continue
        for k in range(1, ds.s + 1):
            dec, _ = greedy_decompose(ds, k)
            opt = brute_force_minmax(ds, k)
            checked += 1
            suboptimal += dec.max_degree > opt
            if not opt <= dec.max_degree <= bound(ds.d, ds.s, k):
                bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and checked > 0 and elapsed < 30
    record_criterion(3, ok, f"{checked} cases with s <= 10, {bad} outside brute <= greedy <= bound ({suboptimal} strictly suboptimal, allowed), {elapsed:.2f} s")
    assert ok


# 4 -------------------------------------------------------------------------------


def test_criterion_04_product_quotient_rules():
    rng = random.Random(SEED + 4)
    t0 = time.perf_counter()
    failures = 0
    for _ in range(100):
        f, g = random_xpoly(rng, 6), random_xpoly(rng, 6)
        if not (verify_product_rule(f, g, CTX) and verify_quotient_rule(f, g, CTX)):
            failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 10
    record_criterion(4, ok, f"100 pairs, {failures} failures (exact RatFunc equality), {elapsed:.2f} s")
    assert ok


# 5 -------------------------------------------------------------------------------


def test_criterion_05_wronskian_forms():
    rng = random.Random(SEED + 5)
    t0 = time.perf_counter()
    failures = variants = 0
    for i in range(100):
        n = 1 + i % 3
        fs = FunctionTuple.of([random_xpoly(rng, 4) for _ in range(n + 1)], CTX)
        base = wronskian(fs)
        if wronskian_shift_form(fs) != base:
            failures += 1
        for deltas in product((-1, 1), repeat=n):
            variants += 1
            if wronskian_sign_form(fs, list(deltas)) != base:
                failures += 1
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 60
    record_criterion(5, ok, f"100 tuples, {variants} sign variants, {failures} mismatches, {elapsed:.2f} s")
    assert ok


# 6 -------------------------------------------------------------------------------


def test_criterion_06_properties_and_independence():
    rng = random.Random(SEED + 6)
    prop_fail = dep_fail = indep_fail = 0
    for i in range(50):
        n = 1 + i % 3
        fs = FunctionTuple.of([random_xpoly(rng, 3) for _ in range(n + 1)], CTX)
        g = random_xpoly(rng, 2)
        cs = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for _ in range(n + 1)]
        if not all(property_report(fs, g, cs).values()):
            prop_fail += 1
        if wronskian(fs).is_zero() != (not linearly_independent(fs)):
            indep_fail += 1
        # a dependent tuple: append a rational combination of the entries
        combo = XPoly([])
        for c, f in zip(cs, fs.entries):
            combo = combo + to_xpoly(f) * XPoly([c])
        dep = FunctionTuple.of([*fs.entries, combo], CTX)
        if not wronskian(dep).is_zero():
            dep_fail += 1
    ok = prop_fail == dep_fail == indep_fail == 0
    record_criterion(6, ok, f"50 tuples: {prop_fail} property failures, {indep_fail} independence mismatches, {dep_fail} dependent tuples with W != 0")
    assert ok


# 7 -------------------------------------------------------------------------------


ORBIT_BASES = [Fraction(3), Fraction(5), Fraction(7, 2), Fraction(-6), Fraction(9, 4), Fraction(-5, 3)]


def _planted_orbit_instance(rng):
    """Roots w * 2^j on one or two shift orbits, with multiplicities."""
    roots = {}
    for w in rng.sample(ORBIT_BASES, rng.randint(1, 2)):
        for j in rng.sample(range(0, 6), rng.randint(1, 4)):
            roots[w * 2**j] = rng.randint(1, 3)
    g = Laurent({0: 1})
    for a, m in roots.items():
        g = g * Laurent({1: 1, 0: -a}) ** m
    return roots, g


def test_criterion_07_order_identity():
    rng = random.Random(SEED + 7)
    points_checked = mismatches = nontrivial = 0
    for _ in range(50):
        roots, g = _planted_orbit_instance(rng)
        f = RatFunc.poly(g)
        bases = {w for w in ORBIT_BASES if any(a / w in {Fraction(2) ** j for j in range(6)} for a in roots)}
        for M in (1, 2, 3):
            pts = [w * Fraction(2) ** j for w in bases for j in range(-2, 9) if abs(w * 2**j) > 2**M]
            for p in pts:
                left, right = lemma53_sides(f, M, p, CTX)
                # the shifted side read directly off the planted root list
                direct = min(roots.get(p * Fraction(1, 2) ** (M - 2 * t), 0) for t in range(M + 1))
                points_checked += 1
                nontrivial += left > 0
                if not left == right == direct:
                    mismatches += 1
    ok = mismatches == 0 and nontrivial > 0
    record_criterion(7, ok, f"50 instances x M in {{1,2,3}}: {points_checked} points, {nontrivial} with positive order, {mismatches} mismatches")
    assert ok


# 8 -------------------------------------------------------------------------------


def _x_of(w: Fraction) -> Fraction:
    return (w + 1 / w) / 2


def test_criterion_08_superadditivity():
    rng = random.Random(SEED + 8)
    aw_fail = classical_fail = 0
    strict = 0
    for _ in range(50):
        w = rng.choice(ORBIT_BASES)
        M = rng.randint(1, 3)
        factors = []
        for _ in range(rng.randint(2, 3)):
            p = XPoly([1])
            for j in rng.sample(range(0, 5), rng.randint(1, 2)):
                p = p * XPoly([-_x_of(w * 2**j), 1]) ** rng.randint(1, 2)
            factors.append(RatFunc.poly(to_symlaurent(p)))
        pts = [w * Fraction(2) ** j for j in range(-1, 8) if abs(w * 2**j) > 2**M]
        rep = superadditivity_report(factors, M, pts, CTX)
        aw_fail += not rep["aw"]
        classical_fail += rep["classical"] is not True
        strict += sum(row["aw_lhs"] > row["aw_rhs"] for row in rep["rows"])
    ok = aw_fail == 0 and classical_fail == 0
    record_criterion(8, ok, f"50 instances: {aw_fail} AW failures, {classical_fail} classical-chain failures, {strict} strict rows")
    assert ok


# 9 -------------------------------------------------------------------------------


def _random_reduced_curve(rng, n):
    while True:
        comps = [random_xpoly(rng, 3) for _ in range(n + 1)]
        if all(c.is_constant() for c in comps):
            continue
        try:
            return ProjCurveRep(tuple(comps), CTX)
        except ValueError:
            continue


def _random_form(rng, nvars, degree):
    terms = {}
    for e in product(range(degree + 1), repeat=nvars):
        if sum(e) == degree and rng.random() < 0.7:
            terms[e] = rng.randint(-4, 4)
    terms = {e: c for e, c in terms.items() if c}
    return HomPoly(nvars, terms or {tuple([degree] + [0] * (nvars - 1)): 1})


def test_criterion_09_first_main_theorem():
    t0 = time.perf_counter()
    grid = RGrid.geometric(10, 1e4, 25, theta_points=2048)
    rep = fmt_check(ProjCurveRep(("1", "x"), CTX), Hypersurface.hyperplane([0, 1]), grid)
    line_dev = max(abs(v) for v in rep.column("deviation"))
    rng = random.Random(SEED + 9)
    worst = 0.0
    pairs = 0
    while pairs < 12:
        n = rng.randint(1, 2)
        curve = _random_reduced_curve(rng, n)
        D = Hypersurface(_random_form(rng, n + 1, rng.randint(1, 3)))
        if D.pullback(curve).is_zero():
            continue
        worst = max(worst, fmt_check(curve, D, grid).meta["spread"])
        pairs += 1
    elapsed = time.perf_counter() - t0
    ok = line_dev < 1e-6 and worst < 0.05 and elapsed < 60
    record_criterion(9, ok, f"line deviation {line_dev:.1e}; worst spread over {pairs} random pairs {worst:.2e}; {elapsed:.2f} s")
    assert ok


# 10 ------------------------------------------------------------------------------


def test_criterion_10_parameter_certificates():
    failures = []
    for n, dhat, alpha, eps in product((1, 2, 3), (1, 2), (1, 2), (Fraction(1), Fraction(1, 2))):
        fp = filtration_params(n, dhat, alpha, eps)
        c = fp["certificates"]
        ratio_ok = Fraction(fp["N"] * fp["M"], dhat * fp["Omega"]) <= (n + 1) + eps / (alpha + 1)
        if not (fp["N"] % dhat == 0 and ratio_ok and c["ratio_le_bound"] and c["M_le_bound"] and c["M1_certified"]):
            failures.append((n, dhat, alpha, eps))
    spot = filtration_params(1, 1, 1, 1)
    spot_vals = (spot["N"], spot["M"], spot["Omega"], spot["M1"])
    ok = not failures and spot_vals == (18, 19, 153, 85)
    record_criterion(10, ok, f"24 grid points, {len(failures)} failed certificates; spot (N, M, Omega, M1) = {spot_vals}")
    assert ok


# 11 ------------------------------------------------------------------------------


FORMS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, -2, 3), (2, 1, -1)]


def test_criterion_11_smt_trends():
    curve = ProjCurveRep(("1", "x", "x^2"), CTX)
    grid = RGrid.geometric(100, 1e4, 13, theta_points=2048)
    worst = math.inf
    verdicts = []
    for p in (4, 5, 6):
        H = HyperplaneSet(FORMS[:p])
        assert general_position_check(H, 2)
        for run in (run_general_smt, run_truncated_smt):
            rep = run(curve, H, grid, 0.05)
            verdicts.append(rep.meta["verdict"])
            worst = min(worst, rep.meta["worst_top_half"])
    ok = all(v == "pass" for v in verdicts) and worst >= -0.05
    record_criterion(11, ok, f"p in 4..6, both harnesses: verdicts {verdicts.count('pass')}/{len(verdicts)} pass, worst top-half margin/T {worst:.3f}")
    assert ok

