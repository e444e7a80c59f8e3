"""
Critical exponents of the endpoint transition
=============================================

For each point count k there is a threshold exponent q_k at which the
configuration with all mass on the two endpoints overtakes the best
configuration that keeps one or two interior locations.  Odd k admits a
closed form; even k needs a bracketed root search.
"""

from math import exp

from pairphase import (
    KernelParam,
    critical_exponent,
    even_branch_energy,
    odd_branch_energies,
    odd_critical_exact,
    phi,
)

# %%
# Odd point counts: the interior branch keeps a single midpoint, and the
# crossing solves 2*exp(-2^(-q)) = 1 + exp(-1) exactly.

odd = odd_critical_exact()
residual = abs(2.0 * exp(-(2.0 ** -odd.value)) - (1.0 + exp(-1.0)))
print(f"odd-k critical exponent : {odd.value:.9f}")
print(f"defining residual       : {residual:.3e}")

# %%
# Even point counts: the interior branch carries two symmetric interior
# points whose best placement is itself an inner optimization, so the
# crossing is found by bisection.  The threshold increases with k and
# stays below the odd-k value.

print(" k   q_k           method          bracket")
for k in range(4, 21, 2):
    c = critical_exponent(k)
    print(f"{k:2d}   {c.value:.9f}   {c.method:14s}  {c.bracket_width:.1e}")

# %%
# The two branches for k = 11 points (m = 5) near the odd threshold: below
# q_11 the interior branch wins, above it the endpoint branch does.

for q in (1.35, odd.value, 1.43):
    b = odd_branch_energies(5, KernelParam(q))
    side = "interior" if b.e_int < b.e_end else "endpoint"
    print(f"q={q:.6f}  interior={b.e_int:.9f}  endpoint={b.e_end:.9f}  -> {side}")

# %%
# For even k the interior branch energy depends on where the two interior
# points sit (at a and 1-a).  phi reports the best interior margin over the
# endpoint split; it is negative below the threshold and zero above.

for k, q in ((8, 1.0), (8, 1.15), (8, 1.25)):
    m = k // 2
    margin = phi(m, KernelParam(q))
    sample = even_branch_energy(m, 0.25, KernelParam(q))
    print(
        f"k={k}  q={q:.2f}  best interior margin={margin:+.9f}  "
        f"e_int(a=0.25)={sample.e_int:.9f}  e_end={sample.e_end:.9f}"
    )
