"""First-main-theorem check and second-main-theorem margin trends for a conic.

Run: python demos/nevanlinna_margins.py
"""

from awcalc.nevanlinna import Hypersurface, ProjCurveRep, RGrid, fmt_check
from awcalc.qcore import HomPoly
from awcalc.smt import HyperplaneSet, filtration_params, run_general_smt, run_truncated_smt

curve = ProjCurveRep(("1", "x", "x^2"))
grid = RGrid.geometric(100, 1e4, 9)

# m + N - d T is constant in r; the spread measures quadrature error only
Q = HomPoly(3, {(2, 0, 0): 1, (0, 1, 1): -3, (1, 0, 1): 2})
rep = fmt_check(curve, Hypersurface(Q), grid)
print(f"FMT deviation spread over the grid: {rep.meta['spread']:.2e}")

H = HyperplaneSet([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, -2, 3)])
for run in (run_general_smt, run_truncated_smt):
    rep = run(curve, H, grid)
    print(f"\n{rep.kind}: verdict {rep.meta['verdict']}, worst top-half margin/T {rep.meta['worst_top_half']:.3f}")
    for r, ratio in zip(rep.column("r"), rep.column("margin_over_T")):
        print(f"  r = {r:9.1f}   margin/T = {ratio:7.3f}")

fp = filtration_params(1, 1, 1, 1)
print("\nfiltration parameters for n = dhat = alpha = eps = 1:", {k: fp[k] for k in ("N", "M", "Omega", "M1")})
