"""Pair energies of point configurations on the unit interval.

A configuration of k points 0 <= x_1 <= ... <= x_k <= 1 interacts through the
bounded kernel exp(-d**q), d the pairwise distance and q > 0 the exponent:

    energy(x; q) = sum_{i < j} exp(-(x_j - x_i)**q)

Coincident pairs are legal and contribute exp(-0) = 1.  The same energy can be
written in terms of the k-1 consecutive gaps, which is the coordinate system
the simplex-constrained solver works in.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "KernelParam",
    "Configuration",
    "GapVector",
    "energy",
    "gap_energy",
    "gradient",
    "to_gaps",
    "to_configuration",
    "reflect",
]

# Positions may miss [0, 1] by accumulated rounding; anything worse is a bug.
_RANGE_TOL = 1e-9

# Floor for pairwise distances inside the gradient.  For q < 1 the factor
# d**(q-1) diverges as d -> 0; the floor keeps the outward push finite while
# leaving well-separated pairs untouched.
_DISTANCE_FLOOR = 1e-12


@dataclass(frozen=True)
class KernelParam:
    """Kernel exponent q > 0 of the pair interaction exp(-d**q)."""

    q: float

    def __post_init__(self) -> None:
        q = float(self.q)
        if not np.isfinite(q) or q <= 0.0:
            raise ValueError(f"kernel exponent must be finite and > 0, got {self.q!r}")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True, eq=False)
class Configuration:
    """Weakly increasing points on [0, 1].

    Construction sorts its input, so callers may pass points in any order.
    Ties are allowed (coincident points are meaningful minimizers for q > 1).
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.sort(np.asarray(self.points, dtype=float).ravel())
        if pts.size < 1:
            raise ValueError("a configuration needs at least one point")
        if not np.all(np.isfinite(pts)):
            raise ValueError("configuration points must be finite")
        if pts[0] < -_RANGE_TOL or pts[-1] > 1.0 + _RANGE_TOL:
            raise ValueError(f"points must lie in [0, 1], got range [{pts[0]}, {pts[-1]}]")
        pts = np.clip(pts, 0.0, 1.0)
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def k(self) -> int:
        return self.points.size

    def __repr__(self) -> str:  # keep demo output readable
        inner = ", ".join(format(p, "g") for p in self.points)
        return f"Configuration([{inner}])"


@dataclass(frozen=True, eq=False)
class GapVector:
    """Nonnegative consecutive gaps g_r = x_{r+1} - x_r of a configuration."""

    gaps: np.ndarray

    def __post_init__(self) -> None:
        g = np.asarray(self.gaps, dtype=float).ravel()
        if not np.all(np.isfinite(g)):
            raise ValueError("gaps must be finite")
        if g.size and g.min() < -_RANGE_TOL:
            raise ValueError(f"gaps must be nonnegative, got min {g.min()}")
        g = np.maximum(g, 0.0)
        if g.sum() > 1.0 + _RANGE_TOL:
            raise ValueError(f"gap span must not exceed 1, got {g.sum()}")
        g.flags.writeable = False
        object.__setattr__(self, "gaps", g)

    @property
    def span(self) -> float:
        return float(self.gaps.sum())

    def __repr__(self) -> str:
        inner = ", ".join(format(g, "g") for g in self.gaps)
        return f"GapVector([{inner}])"


# ---------------------------------------------------------------------------
# Array-level primitives.  These accept stacked inputs of shape (..., k) and
# are shared by the solver and the flow integrator, which batch many
# configurations through one call.
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pair_indices(k: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(k, 1)


@lru_cache(maxsize=None)
def _upper_mask(k: int) -> np.ndarray:
    mask = np.triu(np.ones((k, k), dtype=bool), 1)
    mask.flags.writeable = False
    return mask


def _energy_nd(x: np.ndarray, q: float) -> np.ndarray:
    """Pair energy of each configuration in a stack of shape (..., k)."""
    i, j = _pair_indices(x.shape[-1])
    d = np.abs(x[..., j] - x[..., i])
    return np.exp(-(d**q)).sum(axis=-1)


def _gradient_nd(x: np.ndarray, q: float) -> np.ndarray:
    """Energy gradient for each configuration in a stack of shape (..., k).

    The r-th component is

        q * sum_{j > r} d_rj**(q-1) exp(-d_rj**q)
          - q * sum_{i < r} d_ir**(q-1) exp(-d_ir**q)

    For q < 1 pair distances are floored at _DISTANCE_FLOOR so colliding
    points exert a finite (but very large) outward push; for q = 1 the factor
    d**0 is taken as 1 even at d = 0 (the one-sided derivative), which is what
    0.0**0.0 evaluates to.
    """
    k = x.shape[-1]
    d = np.abs(x[..., None, :] - x[..., :, None])
    if q < 1.0:
        d = np.maximum(d, _DISTANCE_FLOOR)
    w = np.where(_upper_mask(k), q * d ** (q - 1.0) * np.exp(-(d**q)), 0.0)
    return w.sum(axis=-1) - w.sum(axis=-2)


def _positions_from_gaps(g: np.ndarray) -> np.ndarray:
    """Cumulative positions (origin 0) for a stack of gap vectors (..., n)."""
    x = np.zeros(g.shape[:-1] + (g.shape[-1] + 1,), dtype=float)
    np.cumsum(g, axis=-1, out=x[..., 1:])
    return x


# ---------------------------------------------------------------------------
# Public operations.
# ---------------------------------------------------------------------------


def energy(config: Configuration, kernel: KernelParam) -> float:
    """Total pair energy sum_{i<j} exp(-(x_j - x_i)**q)."""
    return float(_energy_nd(config.points, kernel.q))


def gap_energy(gaps: GapVector, kernel: KernelParam) -> float:
    """Pair energy written in gap coordinates.

    Distances are partial sums of consecutive gaps; the value agrees with
    ``energy`` on the corresponding configuration to machine precision.
    """
    return float(_energy_nd(_positions_from_gaps(gaps.gaps), kernel.q))


def gradient(config: Configuration, kernel: KernelParam) -> np.ndarray:
    """Gradient of the energy with respect to each point position.

    Components always sum to zero: the energy depends on differences only,
    so a rigid translation leaves it unchanged.
    """
    return _gradient_nd(config.points, kernel.q)


def to_gaps(config: Configuration) -> GapVector:
    """Consecutive gaps of a configuration (length k-1)."""
    return GapVector(np.diff(config.points))


def to_configuration(gaps: GapVector, origin: float = 0.0) -> Configuration:
    """Configuration with the given origin and consecutive gaps.

    Rejects placements whose rightmost point would leave the unit interval.
    """
    origin = float(origin)
    if origin < -_RANGE_TOL or origin + gaps.span > 1.0 + _RANGE_TOL:
        raise ValueError(
            f"origin {origin} with span {gaps.span} does not fit inside [0, 1]"
        )
    return Configuration(origin + _positions_from_gaps(gaps.gaps))


def reflect(config: Configuration) -> Configuration:
    """Mirror image x -> 1 - x.  Pairwise distances, hence energy, are preserved."""
    return Configuration(1.0 - config.points[::-1])
