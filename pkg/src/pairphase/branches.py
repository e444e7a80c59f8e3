"""Closed-form branch energies and critical exponents of the clustering transition.

For q above a k-dependent critical exponent q_k, minimizers abandon interior
points entirely and split between the two endpoints.  The transition is
located by comparing closed-form energies of parametric candidate families:

* odd k = 2m+1: stacks of m at each endpoint plus one midpoint, against the
  (m, m+1) endpoint split.  The energy difference is m-independent up to a
  positive factor, giving a single exact odd exponent.
* even k = 2m: stacks of m-1 plus two symmetric interior points at a and
  1-a, against the balanced (m, m) split.  The infimum over a crosses the
  split energy at a k-dependent exponent found by bisection.
"""

from dataclasses import dataclass
from math import exp, log, sqrt

import numpy as np

from .errors import BracketFailureError
from .kernel import KernelParam

__all__ = [
    "OddBranchEnergies",
    "EvenBranchEnergies",
    "CriticalExponent",
    "odd_branch_energies",
    "odd_critical_exact",
    "even_branch_energy",
    "phi",
    "even_critical",
    "critical_exponent",
]

_INV_PHI = (sqrt(5.0) - 1.0) / 2.0  # golden-section interior ratios
_INV_PHI2 = (3.0 - sqrt(5.0)) / 2.0

# "Interior strictly better" is detected away from the degenerate a = 0 tie:
# values of a below _EDGE_EXCLUSION are ignored and the branch must undercut
# the endpoint split by more than _STRICTNESS_MARGIN.
_EDGE_EXCLUSION = 1e-4
_STRICTNESS_MARGIN = 1e-12

_GRID_POINTS = 1001
_INNER_TOLERANCE = 1e-12


@dataclass(frozen=True)
class OddBranchEnergies:
    """Energies of the odd candidate pair for k = 2m+1."""

    m: int
    e_int: float  # stacks of m at both endpoints plus one midpoint
    e_end: float  # endpoint split (m, m+1)


@dataclass(frozen=True)
class EvenBranchEnergies:
    """Energies of the even candidate pair for k = 2m."""

    m: int
    a: float  # interior points sit at a and 1-a
    e_int: float
    e_end: float  # balanced endpoint split (m, m)


@dataclass(frozen=True)
class CriticalExponent:
    """A located transition exponent for the point count k (always > 1)."""

    k: int
    value: float
    method: str  # "exact_odd" or "bisection_even"
    bracket_width: float


def odd_branch_energies(m: int, kernel: KernelParam) -> OddBranchEnergies:
    """Closed-form energies of the two odd-k candidates (k = 2m+1).

    The midpoint configuration has m(m-1) coincident pairs, m^2 cross pairs
    at distance 1, and 2m pairs at distance 1/2; the endpoint split has m^2
    coincident pairs and m(m+1) cross pairs.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    inv_e = exp(-1.0)
    e_int = m * (m - 1) + m * m * inv_e + 2 * m * exp(-(2.0 ** -kernel.q))
    e_end = m * m + m * (m + 1) * inv_e
    return OddBranchEnergies(m=m, e_int=e_int, e_end=e_end)


def odd_critical_exact() -> CriticalExponent:
    """The exact odd transition exponent, identical for every odd k >= 3.

    Solving 2 e^{-2^{-q}} = 1 + e^{-1} for q gives
    q = log(1/(-log((1+e^{-1})/2))) / log 2.  The result is stamped with the
    smallest odd case k = 3; the value does not depend on k.
    """
    crossing = (1.0 + exp(-1.0)) / 2.0
    value = log(1.0 / (-log(crossing))) / log(2.0)
    return CriticalExponent(k=3, value=value, method="exact_odd", bracket_width=0.0)


def _even_endpoint(m: int) -> float:
    return m * (m - 1) + m * m * exp(-1.0)


def _even_interior(m: int, a: np.ndarray | float, q: float) -> np.ndarray | float:
    """Vectorized interior-branch energy for k = 2m, interior points at a, 1-a."""
    inv_e = exp(-1.0)
    return (
        (m - 1) * (m - 2)
        + (m - 1) * (m - 1) * inv_e
        + 2 * (m - 1) * (np.exp(-(a**q)) + np.exp(-((1.0 - a) ** q)))
        + np.exp(-((1.0 - 2.0 * a) ** q))
    )


def even_branch_energy(m: int, a: float, kernel: KernelParam) -> EvenBranchEnergies:
    """Closed-form energies of the two even-k candidates (k = 2m).

    At a = 0 the interior branch degenerates to the balanced endpoint split
    and e_int equals e_end identically.
    """
    if m < 2:
        raise ValueError("even branch needs m >= 2 (k = 2m >= 4)")
    a = float(a)
    if not 0.0 <= a <= 0.5:
        raise ValueError(f"interior offset a must lie in [0, 1/2], got {a}")
    return EvenBranchEnergies(
        m=m,
        a=a,
        e_int=float(_even_interior(m, a, kernel.q)),
        e_end=_even_endpoint(m),
    )


def _golden_minimum(fn, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section search for the minimum of a unimodal fn on [lo, hi]."""
    a, b = lo, hi
    h = b - a
    if h <= tol:
        mid = 0.5 * (a + b)
        return mid, fn(mid)
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    yc, yd = fn(c), fn(d)
    while h > tol:
        if yc < yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + _INV_PHI2 * h
            yc = fn(c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + _INV_PHI * h
            yd = fn(d)
    return (c, yc) if yc < yd else (d, yd)


def _interior_minimum(
    m: int, q: float, lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """Grid scan plus golden-section refinement of a -> e_int(a; q) on [lo, hi].

    The interior basin can be shallow and can merge with the boundary near
    the transition, so the grid isolates it before the local refinement.
    """
    grid = np.linspace(lo, hi, _GRID_POINTS)
    values = _even_interior(m, grid, q)
    index = int(np.argmin(values))
    bracket_lo = grid[max(index - 1, 0)]
    bracket_hi = grid[min(index + 1, _GRID_POINTS - 1)]
    refined_a, refined_val = _golden_minimum(
        lambda a: float(_even_interior(m, a, q)), bracket_lo, bracket_hi, tol
    )
    if refined_val <= values[index]:
        return refined_a, refined_val
    return float(grid[index]), float(values[index])


def phi(m: int, kernel: KernelParam, inner_tolerance: float = _INNER_TOLERANCE) -> float:
    """min over a in [0, 1/2] of e_int(a; q) - e_end for the even branch.

    Never positive: a = 0 attains the endpoint-split energy exactly.
    """
    if m < 2:
        raise ValueError("phi is defined for m >= 2")
    _, best = _interior_minimum(m, kernel.q, 0.0, 0.5, inner_tolerance)
    return float(best - _even_endpoint(m))


def _interior_strictly_better(m: int, q: float) -> bool:
    """Does some a in [delta, 1/2] beat the endpoint split by the margin?"""
    _, best = _interior_minimum(m, q, _EDGE_EXCLUSION, 0.5, _INNER_TOLERANCE)
    return best < _even_endpoint(m) - _STRICTNESS_MARGIN


def even_critical(m: int, solver_tolerance: float = 1e-9) -> CriticalExponent:
    """Even transition exponent q_{2m}, located by bisection on [1, q_odd].

    Below the exponent the interior branch undercuts the endpoint split;
    above it the strictly better interior point disappears.  The bracket
    endpoints are validated and BracketFailureError signals a regime where
    that sign pattern does not hold.
    """
    if m < 2:
        raise ValueError("even critical exponents need m >= 2")
    if solver_tolerance <= 0:
        raise ValueError("solver_tolerance must be positive")
    lo, hi = 1.0, odd_critical_exact().value
    if not _interior_strictly_better(m, lo):
        raise BracketFailureError(
            f"interior branch is not better at q={lo} for m={m}"
        )
    if _interior_strictly_better(m, hi):
        raise BracketFailureError(
            f"interior branch is still better at q={hi:.9f} for m={m}"
        )
    while hi - lo > solver_tolerance:
        mid = 0.5 * (lo + hi)
        if _interior_strictly_better(m, mid):
            lo = mid
        else:
            hi = mid
    return CriticalExponent(
        k=2 * m,
        value=0.5 * (lo + hi),
        method="bisection_even",
        bracket_width=hi - lo,
    )


def critical_exponent(k: int) -> CriticalExponent:
    """Transition exponent for a given k >= 3: exact for odd k, bisected for even."""
    if k < 3:
        raise ValueError("critical exponents are defined for k >= 3")
    if k % 2 == 1:
        odd = odd_critical_exact()
        return CriticalExponent(
            k=k, value=odd.value, method=odd.method, bracket_width=0.0
        )
    return even_critical(k // 2, 1e-9)
