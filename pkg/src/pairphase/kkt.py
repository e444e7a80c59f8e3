"""Stationarity diagnostics in gap coordinates and cluster-structure extraction.

At a minimizer with q >= 1, widening any open gap must trade off against the
others at a common rate: the per-gap decrease rate equals a single multiplier
on every open gap and cannot exceed it on any collapsed gap.  This module
measures how well a solver result satisfies that balance, and summarizes the
coincidence pattern (endpoint stacks, distinct interior positions) together
with the empirical stack-size law m(k) = floor((k+1)/3).
"""

from dataclasses import dataclass

import numpy as np

from .errors import NoActiveGapsError, UnsupportedRegimeError
from .kernel import Configuration, KernelParam, _pair_indices
from .solver import MinimizeResult, SolverConfig

__all__ = [
    "KktReport",
    "ClusterSummary",
    "gap_derivative",
    "kkt_report",
    "cluster_summary",
    "clustering_law",
]


@dataclass(frozen=True)
class KktReport:
    """Multiplier balance of a solver result; gap indices are zero-based."""

    lambda_estimate: float
    max_active_deviation: float
    max_inactive_violation: float  # -inf when every gap is active
    active_gaps: tuple[int, ...]


@dataclass(frozen=True)
class ClusterSummary:
    """Coincidence pattern of a configuration at a given threshold."""

    left_stack: int  # points coincident with 0
    right_stack: int  # points coincident with 1
    interior_points: tuple[float, ...]  # sorted distinct interior positions
    m_observed: int  # min(left_stack, right_stack)


def _require_balanced_regime(q: float) -> None:
    if q < 1.0:
        raise UnsupportedRegimeError(
            f"gap-rate balance diagnostics need q >= 1, got q={q}"
        )


def _all_gap_rates(points: np.ndarray, q: float) -> np.ndarray:
    """Decrease rate of the energy as each of the k-1 gaps widens.

    The pair (i, j) with i < j stretches with gap r exactly when
    i <= r < j, contributing q d^{q-1} e^{-d^q} at separation d.  With q >= 1
    and the convention 0^0 = 1, coincident pairs contribute q at q = 1 and 0
    at q > 1, matching the one-sided limit.
    """
    k = points.shape[0]
    rows, cols = _pair_indices(k)
    d = points[cols] - points[rows]
    with np.errstate(divide="ignore"):
        weights = q * d ** (q - 1.0) * np.exp(-(d**q))
    gap_ids = np.arange(k - 1)
    crossing = (rows[:, None] <= gap_ids) & (gap_ids < cols[:, None])
    return weights @ crossing.astype(np.float64)


def gap_derivative(config: Configuration, kernel: KernelParam, r: int) -> float:
    """Rate at which the energy falls as gap r widens, all other gaps fixed.

    Gap r (zero-based) separates the r-th and (r+1)-th smallest points; the
    value is the sum of q d^{q-1} e^{-d^q} over all pairs straddling it, the
    negative of the energy's derivative in that gap coordinate.
    """
    _require_balanced_regime(kernel.q)
    k = config.k
    if k < 2:
        raise ValueError("gap derivatives need at least two points")
    if not 0 <= r <= k - 2:
        raise ValueError(f"gap index must lie in [0, {k - 2}], got {r}")
    return float(_all_gap_rates(config.points, kernel.q)[r])


def kkt_report(
    result: MinimizeResult, kernel: KernelParam, solver: SolverConfig
) -> KktReport:
    """Measure the multiplier balance of a solver result.

    The multiplier is estimated as the mean gap rate over open gaps
    (averaging spreads estimation error symmetrically, so the deviation
    metric reads as internal consistency).  Open gaps are classified with
    the solver's zero-gap threshold; collapsed gaps satisfy the balance when
    their rate does not exceed the multiplier, so the reported violation is
    negative at a clean minimizer and -inf when no gap is collapsed.
    """
    _require_balanced_regime(kernel.q)
    points = result.configuration.points
    if points.shape[0] < 2:
        raise NoActiveGapsError("a single point has no gaps to balance")
    gaps = np.diff(points)
    active = gaps > solver.zero_gap_threshold
    if not np.any(active):
        raise NoActiveGapsError("every gap is collapsed; nothing spans [0, 1]")
    rates = _all_gap_rates(points, kernel.q)
    lam = float(rates[active].mean())
    max_active_deviation = float(np.abs(rates[active] - lam).max())
    if np.all(active):
        max_inactive_violation = float("-inf")
    else:
        max_inactive_violation = float((rates[~active] - lam).max())
    return KktReport(
        lambda_estimate=lam,
        max_active_deviation=max_active_deviation,
        max_inactive_violation=max_inactive_violation,
        active_gaps=tuple(int(i) for i in np.nonzero(active)[0]),
    )


def cluster_summary(result: MinimizeResult, threshold: float = 1e-6) -> ClusterSummary:
    """Count endpoint stacks and list distinct interior positions.

    Points within threshold of an endpoint belong to its stack; interior
    positions closer than threshold to each other are merged (after the
    solver's collision snapping they coincide exactly, so counting is exact).
    """
    if threshold <= 0:
        raise ValueError("coincidence threshold must be positive")
    points = result.configuration.points
    left = int(np.count_nonzero(points <= threshold))
    right = int(np.count_nonzero(points >= 1.0 - threshold))
    interior = points[(points > threshold) & (points < 1.0 - threshold)]
    distinct: list[float] = []
    for value in interior:
        if not distinct or value - distinct[-1] > threshold:
            distinct.append(float(value))
    return ClusterSummary(
        left_stack=left,
        right_stack=right,
        interior_points=tuple(distinct),
        m_observed=min(left, right),
    )


def clustering_law(k: int) -> int:
    """Predicted endpoint-stack size floor((k+1)/3) for the q = 1 minimizer."""
    if k < 2:
        raise ValueError("the stack-size law is stated for k >= 2")
    return (k + 1) // 3
