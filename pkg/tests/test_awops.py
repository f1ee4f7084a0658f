from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from awcalc.awops import (
    AwContext,
    aw_avg,
    aw_diff,
    diff_power,
    mixed,
    shift,
    to_xpoly,
    verify_product_rule,
    verify_quotient_rule,
    x_of_z,
    z_of_x,
)
from awcalc.errors import GuardViolation, ZeroDenominator
from awcalc.qcore import RatFunc, XPoly, parse_xpoly, to_symlaurent

from conftest import xpolys
from oracles import avg as o_avg
from oracles import dq as o_dq
from oracles import dq_pointwise, to_x_coeffs, xpoly_expr

S = "1/2"

# Values produced by the sympy oracle in tests/oracles.py at s = 1/2 and
# cross-checked against direct evaluation of the divided difference.
FROZEN_DQ = {
    (0, 0, 1): [0, Fraction(5, 2)],
    (0, 0, 0, 1): [Fraction(-9, 16), 0, Fraction(21, 4)],
    (1, 2, 0, -3, 1): [Fraction(59, 16), Fraction(-45, 16), Fraction(-63, 4), Fraction(85, 8)],
}
FROZEN_AVG1 = {
    (0, 0, 1): [Fraction(-9, 16), 0, Fraction(17, 8)],
    (0, 0, 0, 1): [0, Fraction(-135, 64), 0, Fraction(65, 16)],
    (1, 2, 0, -3, 1): [Fraction(337, 256), Fraction(565, 64), Fraction(-189, 32), Fraction(-195, 16), Fraction(257, 32)],
}


@pytest.mark.parametrize("coeffs", list(FROZEN_DQ))
def test_dq_frozen(ctx, coeffs):
    assert to_xpoly(aw_diff(XPoly(coeffs), ctx)) == XPoly(FROZEN_DQ[coeffs])


@pytest.mark.parametrize("coeffs", list(FROZEN_AVG1))
def test_avg_frozen(ctx, coeffs):
    assert to_xpoly(aw_avg(XPoly(coeffs), 1, ctx)) == XPoly(FROZEN_AVG1[coeffs])


def test_dq_of_x_squared_renders(ctx):
    assert to_xpoly(aw_diff(parse_xpoly("x^2"), ctx)).render() == "5/2 * x"


@given(xpolys(max_degree=4), st.sampled_from(["1/2", "1/3", "2/3"]))
def test_dq_matches_sympy(p, s):
    ctx = AwContext.from_s(s)
    ref = to_x_coeffs(o_dq(xpoly_expr(p.coeffs), s))
    assert to_xpoly(aw_diff(p, ctx)) == XPoly(ref)


@given(xpolys(max_degree=4), st.integers(0, 3))
def test_avg_matches_sympy(p, n):
    ctx = AwContext.from_s(S)
    ref = to_x_coeffs(o_avg(xpoly_expr(p.coeffs), n, S))
    assert to_xpoly(aw_avg(p, n, ctx)) == XPoly(ref)


@given(xpolys(max_degree=5), st.sampled_from([3, 5, Fraction(7, 3), -2]))
def test_dq_pointwise(p, z):
    ctx = AwContext.from_s(S)
    v = aw_diff(p, ctx)(z)
    assert Fraction(int(v.numerator), int(v.denominator)) == dq_pointwise(p.coeffs, z, S)


@given(xpolys(max_degree=5))
def test_dq_lowers_degree(p):
    ctx = AwContext.from_s(S)
    out = to_xpoly(aw_diff(p, ctx))
    if p.degree == 0:
        assert out.is_zero()
    else:
        assert out.degree == p.degree - 1


def test_avg_zero_is_identity(ctx):
    p = parse_xpoly("x^3 - x + 2")
    assert to_xpoly(aw_avg(p, 0, ctx)) == p


@given(xpolys(max_degree=4), st.integers(-3, 3), st.integers(-3, 3))
def test_shift_group_law(p, a, b):
    ctx = AwContext.from_s(S)
    assert shift(shift(p, a, ctx), b, ctx) == shift(p, a + b, ctx)


@given(xpolys(max_degree=4), st.integers(0, 3))
def test_mixed_endpoints(p, M):
    ctx = AwContext.from_s(S)
    assert mixed(p, M, 0, ctx) == aw_avg(p, M, ctx)
    assert mixed(p, M, M, ctx) == diff_power(p, M, ctx)


@given(xpolys(max_degree=6), xpolys(max_degree=6))
def test_product_rule_property(f, g):
    ctx = AwContext.from_s(S)
    assert verify_product_rule(f, g, ctx)


@given(xpolys(max_degree=4), xpolys(max_degree=4))
def test_quotient_rule_property(f, g):
    ctx = AwContext.from_s(S)
    assert verify_quotient_rule(f, g, ctx)


def test_quotient_rule_zero_denominator(ctx):
    with pytest.raises(ZeroDenominator):
        verify_quotient_rule(XPoly([1]), XPoly([]), ctx)


def test_rules_on_rational_functions(ctx):
    f = RatFunc.poly(to_symlaurent(parse_xpoly("x^2 + 1"))) / RatFunc.poly(to_symlaurent(parse_xpoly("x - 3")))
    g = RatFunc.poly(to_symlaurent(parse_xpoly("2*x + 1")))
    assert verify_product_rule(f, g, ctx)
    assert verify_quotient_rule(f, g, ctx)


def test_guard(ctx):
    assert ctx.guard_radius(2) == pytest.approx(4.0)
    ctx.check_guard(5, 2)
    with pytest.raises(GuardViolation) as info:
        ctx.check_guard(3, 2)
    assert info.value.exit_code == 13


def test_context_rejects_bad_s():
    for bad in ("0", "1", "3/2", "-1/2"):
        with pytest.raises(ValueError):
            AwContext.from_s(bad)


@given(st.fractions(min_value=-20, max_value=20, max_denominator=5))
def test_x_z_roundtrip(x):
    z = z_of_x(complex(x))
    assert abs(z) >= 1 - 1e-12
    assert abs(x_of_z(z) - float(x)) < 1e-9
