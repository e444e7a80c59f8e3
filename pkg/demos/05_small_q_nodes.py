"""
The small-exponent limit and classical node sets
================================================

As the exponent q drops toward zero, minimizers converge to the maximizer
of the product of pairwise distances (the log-energy maximizer) — a
classical interpolation node set.  For moderate k those nodes are close
to, but distinct from, the Gauss-Lobatto points.
"""

import numpy as np

from pairphase import (
    Configuration,
    KernelParam,
    energy,
    lobatto_points,
    log_energy_maximizer,
    minimize,
    small_q_expansion,
)

# %%
# Three node sets for k = 6: the small-q minimizer hugs the log-energy
# maximizer far more tightly than either matches Lobatto.

k = 6
lobatto = lobatto_points(k)
log_nodes = log_energy_maximizer(k)
small_q = minimize(k, KernelParam(0.01)).configuration

for name, config in (
    ("lobatto", lobatto),
    ("log-energy maximizer", log_nodes),
    ("minimizer at q=0.01", small_q),
):
    points = ", ".join(f"{p:.6f}" for p in config.points)
    print(f"{name:22s} ({points})")

dev_log = np.abs(small_q.points - log_nodes.points).max()
dev_lob = np.abs(small_q.points - lobatto.points).max()
print(f"max deviation vs log-energy maximizer: {dev_log:.2e}")
print(f"max deviation vs lobatto             : {dev_lob:.2e}")

# %%
# Why: to first order in q, the energy is a constant minus q times the
# log-energy, so minimizing the energy means maximizing the log-energy.
# The first-order expansion already captures the true energy well.

config = Configuration(np.linspace(0.0, 1.0, 5))
print(" q        true energy      first-order expansion")
for q in (0.08, 0.04, 0.02, 0.01):
    kernel = KernelParam(q)
    print(
        f"{q:.2f}   {energy(config, kernel):.12f}   "
        f"{small_q_expansion(config, kernel):.12f}"
    )

# %%
# The expansion error shrinks roughly linearly in q here (the quadratic
# term of the remainder cancels, so halving q divides the *cubic* residual
# by about eight — see the verification suite for the measured ratios).

for q in (0.04, 0.02, 0.01):
    kernel = KernelParam(q)
    remainder = abs(energy(config, kernel) - small_q_expansion(config, kernel))
    print(f"q={q:.2f}  |energy - expansion| = {remainder:.3e}")
