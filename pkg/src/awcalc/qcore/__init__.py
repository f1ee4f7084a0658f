"""Exact rationals, Laurent polynomials, the x <-> z substitution and parsing."""

from .hompoly import HomPoly
from .laurent import Laurent, SymLaurent, squarefree_decomposition
from .parser import parse_xpoly
from .ratfunc import RatFunc, as_ratfunc
from .roots import DEFAULT_CLUSTER_TOL, order_at, roots_numeric
from .scalars import GaussPoint, QParam, ScalarQ, mpq, q_str, to_q
from .xpoly import X_MODEL, XPoly, from_symlaurent, to_symlaurent

__all__ = [
    "DEFAULT_CLUSTER_TOL",
    "GaussPoint",
    "HomPoly",
    "Laurent",
    "QParam",
    "RatFunc",
    "ScalarQ",
    "SymLaurent",
    "XPoly",
    "X_MODEL",
    "as_ratfunc",
    "from_symlaurent",
    "mpq",
    "order_at",
    "parse_xpoly",
    "q_str",
    "roots_numeric",
    "squarefree_decomposition",
    "to_q",
    "to_symlaurent",
]
