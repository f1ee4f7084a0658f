from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from awcalc.errors import ExponentError, ExprSyntaxError, ZeroFunction
from awcalc.qcore import (
    GaussPoint,
    HomPoly,
    Laurent,
    RatFunc,
    XPoly,
    from_symlaurent,
    order_at,
    parse_xpoly,
    roots_numeric,
    to_symlaurent,
)
from awcalc.qcore.linalg import det_bareiss, det_cofactor, determinant, rank

from conftest import small_rationals, xpolys
from oracles import Z, to_x_coeffs, xpoly_expr


# -- parser ------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("x^2", [0, 0, 1]),
        ("3*x^2 - x/2 + 0.25", [Fraction(1, 4), Fraction(-1, 2), 3]),
        ("(x+1)^3", [1, 3, 3, 1]),
        ("-x", [0, -1]),
        ("1/2", [Fraction(1, 2)]),
        ("x^2 - 3*x + 1/2", [Fraction(1, 2), -3, 1]),
        ("(x - 1)*(x + 1)", [-1, 0, 1]),
    ],
)
def test_parse_values(text, coeffs):
    assert parse_xpoly(text) == XPoly(coeffs)


@pytest.mark.parametrize(
    "text, exc, pos",
    [
        ("x^-1", ExponentError, 2),
        ("x^1/2", ExponentError, 2),
        ("x^(2)", ExponentError, 2),
        ("2/x", ExprSyntaxError, None),
        ("x+", ExprSyntaxError, None),
        ("x + y", ExprSyntaxError, None),
        ("2 x", ExprSyntaxError, 2),
        ("", ExprSyntaxError, None),
    ],
)
def test_parse_errors(text, exc, pos):
    with pytest.raises(exc) as info:
        parse_xpoly(text)
    assert info.value.exit_code == 64
    if pos is not None:
        assert info.value.position == pos


@given(xpolys(max_degree=5, nonzero=False))
def test_render_parse_roundtrip(p):
    assert parse_xpoly(p.render()) == p


@given(xpolys(max_degree=5, nonzero=False))
def test_json_roundtrip(p):
    assert XPoly.from_json(p.to_json()) == p


# -- x <-> z model -------------------------------------------------------------


@given(xpolys(max_degree=5, nonzero=False))
def test_symlaurent_roundtrip(p):
    g = to_symlaurent(p)
    assert g.is_symmetric()
    assert from_symlaurent(g) == p


@given(xpolys(max_degree=4))
def test_symlaurent_matches_sympy_expansion(p):
    g = to_symlaurent(p)
    expr = sp.expand(xpoly_expr(p.coeffs))
    ref = {int(k): sp.Rational(v) for k, v in zip(*_laurent_terms(expr))}
    assert {k: sp.Rational(int(c.numerator), int(c.denominator)) for k, c in g.coeffs.items()} == ref


def _laurent_terms(expr):
    terms = sp.Add.make_args(expr)
    ks, vs = [], []
    acc = {}
    for t in terms:
        c, e = t.as_coeff_exponent(Z)
        acc[int(e)] = acc.get(int(e), 0) + c
    for k, v in acc.items():
        if v != 0:
            ks.append(k)
            vs.append(v)
    return ks, vs


def test_from_symlaurent_rejects_asymmetric():
    with pytest.raises(ValueError):
        from_symlaurent(Laurent({1: 1}))


def test_oracle_inverse_conversion():
    p = XPoly([1, -2, 0, Fraction(3, 4)])
    assert to_x_coeffs(xpoly_expr(p.coeffs)) == [Fraction(c) for c in p.coeffs]


# -- Laurent / RatFunc arithmetic ------------------------------------------------


@given(xpolys(), xpolys(), xpolys())
def test_ring_axioms(a, b, c):
    A, B, C = (to_symlaurent(p) for p in (a, b, c))
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A - A == Laurent()


@given(xpolys(), xpolys())
def test_exact_division(a, b):
    A, B = to_symlaurent(a), to_symlaurent(b)
    assert (A * B).divmod_exact(B) == A


@given(xpolys(max_degree=3), xpolys(max_degree=3), xpolys(max_degree=3))
def test_ratfunc_field_ops(a, b, c):
    fa, fb, fc = (RatFunc.poly(to_symlaurent(p)) for p in (a, b, c))
    assert (fa / fb) * fb == fa
    assert fa / fb + fc / fb == (fa + fc) / fb


def test_ratfunc_canonical_form():
    f = RatFunc(Laurent({2: 2, 0: -2}), Laurent({1: 4, 0: 4}))
    g = RatFunc(Laurent({1: 1, 0: -1}), Laurent({0: 2}))
    assert f == g
    assert hash(f) == hash(g)


@given(small_rationals.filter(lambda c: c != 0), xpolys())
def test_scale_var_composes(c, p):
    g = RatFunc.poly(to_symlaurent(p))
    assert g.scale_var(c).scale_var(1 / c) == g


# -- orders and roots ----------------------------------------------------------------


def test_order_at_planted():
    # (z - 2)^3 (z + 1/3)
    g = Laurent({1: 1, 0: -2}) ** 3 * Laurent({1: 1, 0: Fraction(1, 3)})
    assert order_at(g, 2) == 3
    assert order_at(g, Fraction(-1, 3)) == 1
    assert order_at(g, 5) == 0


def test_order_at_gaussian_point():
    # (z^2 + 1)^2 has double roots at +-i
    g = Laurent({2: 1, 0: 1}) ** 2
    assert order_at(g, GaussPoint.of(1j)) == 2


def test_order_at_errors():
    with pytest.raises(ZeroFunction):
        order_at(Laurent(), 1)
    with pytest.raises(ValueError):
        order_at(Laurent({0: 1}), 0)


def test_roots_numeric_multiplicity():
    g = Laurent({1: 1, 0: -3}) ** 2 * Laurent({1: 1, 0: Fraction(1, 2)})
    roots = sorted(roots_numeric(g), key=lambda t: t[0].real)
    assert len(roots) == 2
    assert roots[0][1] == 1 and abs(roots[0][0] + 0.5) < 1e-10
    assert roots[1][1] == 2 and abs(roots[1][0] - 3) < 1e-10


@given(st.lists(st.integers(-6, 6).filter(bool), min_size=1, max_size=6))
def test_roots_numeric_recovers_planted(rs):
    g = Laurent({0: 1})
    for r in rs:
        g = g * Laurent({1: 1, 0: -r})
    got = roots_numeric(g)
    assert sum(m for _, m in got) == len(rs)
    for r in set(rs):
        match = [m for z, m in got if abs(z - r) < 1e-6]
        assert match == [rs.count(r)]


# -- linear algebra ------------------------------------------------------------------


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small_rationals, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_methods_agree_with_sympy(m):
    ref = sp.Matrix([[sp.Rational(c.numerator, c.denominator) for c in row] for row in m]).det()
    ref = Fraction(int(ref.p), int(ref.q))
    assert Fraction(det_bareiss(m)) == ref
    assert Fraction(determinant(m, method="leibniz")) == ref
    if len(m) <= 4:
        assert Fraction(det_cofactor(m)) == ref


def test_rank():
    assert rank([[1, 2, 3], [2, 4, 6], [0, 1, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0


# -- homogeneous polynomials -------------------------------------------------------------


def test_hompoly_compose_and_json():
    Q = HomPoly.linear([1, -2, 3]) * HomPoly.variable(0, 3)
    assert Q.degree == 2 and Q.is_homogeneous()
    comps = [XPoly([1]), XPoly([0, 1]), XPoly([0, 0, 1])]
    # x0 * (x0 - 2 x1 + 3 x2) at (1, x, x^2)
    assert Q.compose(comps) == XPoly([1, -2, 3])
    assert HomPoly.from_json(Q.to_json()) == Q
    vals = [np.array([1.0]), np.array([2.0]), np.array([4.0])]
    assert np.isclose(Q.evaluate_np(vals)[0], 1 - 4 + 12)
