"""
Cluster counting and first-order certificates
=============================================

At q = 1 the minimizers follow a simple law: out of k points, roughly a
third sit in the interior and the rest pile onto the endpoints.  The gap
formulation also admits a clean stationarity certificate — every active
(positive) gap must see one common marginal energy and every collapsed gap
a larger one.
"""

import numpy as np

from pairphase import (
    KernelParam,
    SolverConfig,
    clustering_law,
    cluster_summary,
    kkt_report,
    minimize,
)

# %%
# Observed endpoint-stack sizes at q = 1 versus the floor((k+1)/3) law for
# the smaller stack.

print(" k   stacks   min stack   law")
for k in range(2, 21):
    result = minimize(k, KernelParam(1.0))
    clusters = cluster_summary(result)
    law = clustering_law(k)
    flag = "" if clusters.m_observed == law else "  <- off the law"
    print(
        f"{k:2d}   ({clusters.left_stack:2d},{clusters.right_stack:2d})   "
        f"{clusters.m_observed:6d}     {law:2d}{flag}"
    )

# %%
# Stationarity certificates.  For q >= 1 the energy is differentiable in
# the gaps; at a minimizer all active gaps share one derivative value
# (the multiplier) and no inactive gap could lower the energy by opening.

solver = SolverConfig()
for q in (1.0, 1.2, 2.0):
    kernel = KernelParam(q)
    worst_active = 0.0
    worst_inactive = -np.inf
    for k in range(3, 13):
        report = kkt_report(minimize(k, kernel, solver), kernel, solver)
        worst_active = max(worst_active, report.max_active_deviation)
        worst_inactive = max(worst_inactive, report.max_inactive_violation)
    print(
        f"q={q:.1f}  worst active deviation={worst_active:.3e}  "
        f"worst inactive violation={worst_inactive:.3e}"
    )
