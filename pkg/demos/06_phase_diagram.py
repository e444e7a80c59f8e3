"""
A phase diagram over the (k, q) plane
=====================================

Sweeps a grid of point counts and exponents, classifies each minimizer as
collision-free, partially clustered, or endpoint-only, and renders the
result as a self-contained SVG scatter.  The same sweep is available from
the command line as `pairphase phase-diagram`.
"""

import numpy as np

from pairphase import (
    KernelParam,
    classify_phase,
    minimize,
    odd_critical_exact,
    phase_diagram_svg,
)

# %%
# Sweep k = 2..12 against 13 exponents from 0.4 to 1.6.  Below q = 1 every
# minimizer is collision-free; the partial-clustering band opens at q = 1
# and the endpoint-only phase takes over beyond each k's critical exponent.

cells = []
for k in range(2, 13):
    for q in np.linspace(0.4, 1.6, 13):
        result = minimize(k, KernelParam(float(q)))
        cells.append((k, float(q), classify_phase(result), result.converged))

counts = {}
for _, _, classification, _ in cells:
    counts[classification] = counts.get(classification, 0) + 1
print("cells per class:", counts)

# %%
# Per-k transition: the largest q that is still collision-free.

print(" k   last collision-free q")
for k in range(2, 13):
    qs = [q for kk, q, cls, _ in cells if kk == k and cls == "collision_free"]
    print(f"{k:2d}   {max(qs):.2f}" if qs else f"{k:2d}   (none)")

# %%
# Render with reference lines at q = 1 and the odd critical exponent.

svg = phase_diagram_svg(cells, q_reference=(1.0, odd_critical_exact().value))
with open("phase_diagram.svg", "w", encoding="utf-8") as handle:
    handle.write(svg)
print("wrote phase_diagram.svg")
