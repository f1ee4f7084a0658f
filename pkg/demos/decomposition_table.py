"""Greedy min-max grouping of factor degrees, compared with exhaustive search.

Run: python demos/decomposition_table.py
"""

from awcalc.decomp import DegreeMultiset, bound, brute_force_minmax, format_table, greedy_decompose

ds = DegreeMultiset((6, 5, 5, 5, 5, 5, 3, 2, 2, 1))
dec, trace = greedy_decompose(ds, 3)
print(format_table(trace, dec))
print("groups (1-based indices):", dec.bins)
print("exhaustive optimum:", brute_force_minmax(ds, 3))
print("a priori bound max{d - s + 1, ceil(d / s')}:", bound(ds.d, ds.s, 3))

print("\ns'  greedy  optimum  bound")
for k in range(1, ds.s + 1):
    g, _ = greedy_decompose(ds, k)
    print(f"{k:2d}  {g.max_degree:6d}  {brute_force_minmax(ds, k):7d}  {bound(ds.d, ds.s, k):5d}")
