"""Global minimization of the pair energy over k points on the unit interval.

Minimizers always span the full interval (moving an extreme point outward
strictly decreases every pairwise term), so the search space reduces to the
simplex of k-1 nonnegative gaps summing to 1.  Two regimes:

* q >= 1: projected gradient descent directly in gap coordinates on the
  simplex, run from every start in the deterministic multistart list.
* q < 1: descent in point coordinates with the endpoints pinned at 0 and 1
  and the distance-floored gradient, again from every start.  Minimizers in
  this regime are collision-free, so the point parameterization is smooth
  where it matters.

The multistart list deliberately contains the known optimal shapes (uniform
grid, Chebyshev-Lobatto nodes, balanced endpoint split, the one-midpoint and
two-interior-point branches) besides seeded random draws, because for q > 1
the gap energy is not convex and descent from a single start can settle on a
stationary point that is not the global minimizer.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import isotonic_regression

from .descent import projected_descent
from .errors import NonConvergenceWarning
from .kernel import (
    Configuration,
    GapVector,
    KernelParam,
    _energy_nd,
    _gradient_nd,
    _positions_from_gaps,
)

__all__ = [
    "SolverConfig",
    "MinimizeResult",
    "minimize",
    "project_to_simplex",
    "default_starts",
]

# Final energies within this window of the best are treated as ties and
# broken by the lexicographic canonicalization rule.
_TIE_WINDOW = 1e-12


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of the multistart projected-gradient solver."""

    max_iterations: int = 200_000
    grad_tolerance: float = 1e-10
    energy_tolerance: float = 1e-15
    multistart_count: int = 32
    rng_seed: int = 42
    zero_gap_threshold: float = 1e-6

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        for name in ("grad_tolerance", "energy_tolerance", "zero_gap_threshold"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.multistart_count < 1:
            raise ValueError("multistart_count must be at least 1")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be a nonnegative integer")


@dataclass(frozen=True)
class MinimizeResult:
    """Lowest-energy configuration found, with stationarity diagnostics.

    ``zero_gaps_left``/``zero_gaps_right`` count the collapsed gaps adjacent
    to each endpoint (the endpoint stack sizes minus one); ``interior_active``
    counts the gaps that survived collision snapping.
    """

    configuration: Configuration
    energy: float
    projected_grad_norm: float
    iterations: int
    start_label: str
    zero_gaps_left: int
    zero_gaps_right: int
    interior_active: int
    converged: bool


# ---------------------------------------------------------------------------
# Simplex projection.
# ---------------------------------------------------------------------------


def _project_rows(v: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row of v onto {g >= 0, sum g = 1}.

    Sort-based algorithm: with the entries in decreasing order, the largest
    prefix whose running average (shifted by the target sum) stays below the
    entries determines the shift; everything below it clips to zero.  The row
    sum is then pinned to exactly 1.0 by absorbing the rounding residual into
    the largest coordinate.
    """
    v = np.asarray(v, dtype=float)
    n = v.shape[-1]
    u = -np.sort(-v, axis=-1)
    css = np.cumsum(u, axis=-1) - 1.0
    counts = np.arange(1, n + 1, dtype=float)
    rho = (u - css / counts > 0).sum(axis=-1)
    theta = np.take_along_axis(css, rho[..., None] - 1, axis=-1) / rho[..., None]
    w = np.maximum(v - theta, 0.0)
    w /= w.sum(axis=-1, keepdims=True)
    residual = w.sum(axis=-1, keepdims=True) - 1.0
    top = np.argmax(w, axis=-1)[..., None]
    np.put_along_axis(w, top, np.take_along_axis(w, top, -1) - residual, -1)
    return w


def project_to_simplex(vector: np.ndarray) -> GapVector:
    """Euclidean-nearest gap vector with nonnegative entries summing to 1."""
    v = np.atleast_2d(np.asarray(vector, dtype=float))
    if v.shape[0] != 1 or v.shape[1] < 1:
        raise ValueError("expected a single vector of length k-1 >= 1")
    return GapVector(_project_rows(v)[0])


# ---------------------------------------------------------------------------
# Starts.
# ---------------------------------------------------------------------------


def _labeled_starts(
    k: int, kernel: KernelParam, solver: SolverConfig
) -> list[tuple[str, np.ndarray]]:
    from .asymptotics import lobatto_points  # deferred: avoids an import cycle

    starts: list[tuple[str, np.ndarray]] = [
        ("uniform", np.linspace(0.0, 1.0, k)),
        ("lobatto", lobatto_points(k).points.copy()),
    ]
    left = (k + 1) // 2
    starts.append(
        ("endpoint_split", np.concatenate([np.zeros(left), np.ones(k - left)]))
    )
    if k % 2 == 1 and k >= 3:
        m = (k - 1) // 2
        starts.append(
            ("odd_branch", np.concatenate([np.zeros(m), [0.5], np.ones(m)]))
        )
    if k % 2 == 0 and k >= 4:
        m = k // 2
        starts.append(
            (
                "even_branch",
                np.concatenate([np.zeros(m - 1), [0.25, 0.75], np.ones(m - 1)]),
            )
        )
    rng = np.random.default_rng(solver.rng_seed)
    for index in range(max(0, solver.multistart_count - len(starts))):
        starts.append((f"random_{index + 1}", np.sort(rng.uniform(0.0, 1.0, k))))
    return starts


def default_starts(
    k: int, kernel: KernelParam, solver: SolverConfig | None = None
) -> list[Configuration]:
    """Deterministic multistart list: named branch shapes, then seeded draws."""
    if k < 2:
        raise ValueError("starts are defined for k >= 2")
    solver = solver or SolverConfig()
    return [Configuration(pts) for _, pts in _labeled_starts(k, kernel, solver)]


# ---------------------------------------------------------------------------
# Descent plumbing.
# ---------------------------------------------------------------------------


def _gap_gradient_nd(g: np.ndarray, q: float) -> np.ndarray:
    """Gradient of the energy in gap coordinates for a stack of gap vectors.

    A gap g_r shifts every point to its right rigidly, so its partial
    derivative is the suffix sum of the point-space gradient.
    """
    grad_x = _gradient_nd(_positions_from_gaps(g), q)
    suffix = np.cumsum(grad_x[..., ::-1], axis=-1)[..., ::-1]
    return suffix[..., 1:]


def _assemble_interior(y: np.ndarray) -> np.ndarray:
    """Pin endpoints: (S, k-2) interior points -> (S, k) full configurations."""
    shape = y.shape[:-1]
    return np.concatenate(
        [np.zeros(shape + (1,)), y, np.ones(shape + (1,))], axis=-1
    )


def _project_interior(y: np.ndarray) -> np.ndarray:
    """Euclidean projection of each row onto {0 <= y_1 <= ... <= y_n <= 1}.

    Isotonic regression (pool-adjacent-violators) is the exact projection
    onto the monotone cone, and clipping a monotone sequence to [0, 1]
    preserves monotonicity, so the composition projects onto the bounded
    cone.  Exactness matters: the stationarity measure ||y - P(y - t*grad)||
    is only trustworthy when P is a true projection.  (Sorting instead of
    pooling makes the measure blind to configurations whose extreme points
    want to trade places -- e.g. two points collapsed onto opposite
    endpoints under the q < 1 clamped gradient -- and descent then reports
    such non-minimizers as converged.)
    """
    out = np.empty_like(y)
    for row in range(y.shape[0]):
        out[row] = isotonic_regression(y[row]).x
    np.clip(out, 0.0, 1.0, out=out)
    return out


def _lex_canonical(points: np.ndarray) -> np.ndarray:
    """The lexicographically smaller of a configuration and its reflection."""
    mirrored = 1.0 - points[::-1]
    delta = points - mirrored
    distinct = np.flatnonzero(np.abs(delta) > 1e-12)
    if distinct.size == 0 or delta[distinct[0]] < 0:
        return points
    return mirrored


def _snap_gaps(points: np.ndarray, threshold: float) -> np.ndarray:
    """Zero out sub-threshold gaps and rescale the survivors to span 1."""
    gaps = np.diff(points)
    gaps[gaps < threshold] = 0.0
    total = gaps.sum()
    if total <= 0.0:  # cannot happen for a full-span minimizer; keep safe anyway
        return points
    gaps /= total
    active = np.flatnonzero(gaps)
    gaps[active[-1]] += 1.0 - gaps.sum()
    return np.concatenate([[0.0], np.cumsum(gaps)])


def minimize(
    k: int, kernel: KernelParam, solver: SolverConfig | None = None
) -> MinimizeResult:
    """Lowest-energy configuration of k points over the full multistart list.

    Every start is descended to the gradient tolerance; final energies within
    1e-12 of the best are tie-broken by reporting the lexicographically
    smaller of configuration and reflection.  Gaps below the zero threshold
    are snapped to exact zeros before reporting so stack counts are integers.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    solver = solver or SolverConfig()
    if k == 1:
        return MinimizeResult(
            configuration=Configuration([0.0]),
            energy=0.0,
            projected_grad_norm=0.0,
            iterations=0,
            start_label="singleton",
            zero_gaps_left=0,
            zero_gaps_right=0,
            interior_active=0,
            converged=True,
        )

    labeled = _labeled_starts(k, kernel, solver)
    labels = [label for label, _ in labeled]
    stack = np.stack([points for _, points in labeled])
    q = kernel.q

    if q >= 1.0:
        result = projected_descent(
            np.diff(stack, axis=-1),
            value_fn=lambda g: _energy_nd(_positions_from_gaps(g), q),
            grad_fn=lambda g: _gap_gradient_nd(g, q),
            project_fn=_project_rows,
            max_iterations=solver.max_iterations,
            grad_tolerance=solver.grad_tolerance,
            energy_tolerance=solver.energy_tolerance,
        )
        finals = _positions_from_gaps(result.x)
    else:
        result = projected_descent(
            stack[:, 1:-1],
            value_fn=lambda y: _energy_nd(_assemble_interior(y), q),
            grad_fn=lambda y: _gradient_nd(_assemble_interior(y), q)[..., 1:-1],
            project_fn=_project_interior,
            max_iterations=solver.max_iterations,
            grad_tolerance=solver.grad_tolerance,
            energy_tolerance=solver.energy_tolerance,
        )
        finals = _assemble_interior(result.x)

    energies = result.value
    tied = np.flatnonzero(energies <= energies.min() + _TIE_WINDOW)
    winner = min(tied, key=lambda s: tuple(_lex_canonical(np.sort(finals[s]))))

    points = _snap_gaps(np.sort(finals[winner]), solver.zero_gap_threshold)
    points = _lex_canonical(points)
    gaps = np.diff(points)
    zero = gaps == 0.0
    zero_left = int(np.argmax(~zero)) if zero.any() else 0
    zero_right = int(np.argmax(~zero[::-1])) if zero.any() else 0

    converged = bool(result.converged[winner])
    if not converged:
        warnings.warn(
            f"no start reached grad_tolerance={solver.grad_tolerance} for "
            f"k={k}, q={q}; returning best stationary candidate",
            NonConvergenceWarning,
            stacklevel=2,
        )

    configuration = Configuration(points)
    return MinimizeResult(
        configuration=configuration,
        energy=float(_energy_nd(configuration.points, q)),
        projected_grad_norm=float(result.pg_norm[winner]),
        iterations=int(result.iterations),
        start_label=labels[winner],
        zero_gaps_left=zero_left,
        zero_gaps_right=zero_right,
        interior_active=int(np.count_nonzero(~zero)),
        converged=converged,
    )
