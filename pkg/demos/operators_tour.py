"""Operators on polynomials in x = (z + 1/z)/2, computed exactly at s = 1/2.

Run: python demos/operators_tour.py
"""

from awcalc.awops import AwContext, aw_avg, aw_diff, mixed, to_xpoly, verify_product_rule
from awcalc.qcore import parse_xpoly
from awcalc.wronskian import FunctionTuple, wronskian, wronskian_shift_form

ctx = AwContext.from_s("1/2")

f = parse_xpoly("x^3 - 2*x + 7")
g = parse_xpoly("x^2 + 1/2")
print("f          =", f.render())
print("D f        =", to_xpoly(aw_diff(f, ctx)).render())
print("A_q f      =", to_xpoly(aw_avg(f, 1, ctx)).render())
print("A_q D f    =", to_xpoly(mixed(f, 2, 1, ctx)).render())

# D(fg) = A f D g + A g D f holds as an identity of rational functions
print("product rule holds:", verify_product_rule(f, g, ctx))

# the Wronskian of 1, x, x^2 is a nonzero constant; two formulas agree exactly
fs = FunctionTuple.of([parse_xpoly(t) for t in ("1", "x", "x^2")], ctx)
W = wronskian(fs)
print("W(1, x, x^2) =", to_xpoly(W).render(), "| shift form agrees:", W == wronskian_shift_form(fs))

dep = FunctionTuple.of([parse_xpoly(t) for t in ("x + 1", "x^2", "2*x^2 - 3*x - 3")], ctx)
print("W of a dependent triple is zero:", wronskian(dep).is_zero())
