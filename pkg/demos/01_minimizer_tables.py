"""
Global minimizers for small point counts
========================================

Computes the canonical energy minimizer for k = 1..10 points at two
exponents: q = 1, where minimizers start parking points on the endpoints,
and q = 1/2, where every minimizer keeps all points separated.
"""

import numpy as np

from pairphase import KernelParam, cluster_summary, minimize

# %%
# At q = 1 the minimizers develop endpoint stacks as k grows: for k >= 4
# some points sit exactly at 0 and 1 with multiplicity.  The canonical
# representative puts the heavier stack on the left.

print("q = 1")
for k in range(1, 11):
    result = minimize(k, KernelParam(1.0))
    clusters = cluster_summary(result)
    points = ", ".join(f"{p:.6f}" for p in result.configuration.points)
    print(
        f"  k={k:2d}  E={result.energy:12.9f}  "
        f"stacks=({clusters.left_stack},{clusters.right_stack})  ({points})"
    )

# %%
# At q = 1/2 the kernel's slope blows up at zero distance, so collisions
# are never optimal: every gap stays strictly positive and the minimizer
# looks like a mildly non-uniform grid.

print("q = 1/2")
for k in range(1, 11):
    result = minimize(k, KernelParam(0.5))
    gaps = np.diff(result.configuration.points)
    min_gap = gaps.min() if gaps.size else float("nan")
    points = ", ".join(f"{p:.6f}" for p in result.configuration.points)
    print(f"  k={k:2d}  E={result.energy:12.9f}  min gap={min_gap:.3e}  ({points})")
