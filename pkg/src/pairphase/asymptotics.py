"""Small-exponent behavior: logarithmic energy and the q -> 0 limit.

As q -> 0+ every kernel value approaches e^{-1}, and the first-order term in
q is proportional to the negative logarithmic energy sum log(x_j - x_i).  The
energy minimizers therefore approach the configuration maximizing the
logarithmic energy with endpoints pinned at 0 and 1.

Two candidate descriptions of that limit are provided side by side and are
deliberately NOT identified with each other:

* ``lobatto_points``: the closed-form Chebyshev-Lobatto nodes
  (1 - cos(j*pi/(k-1)))/2, a classical near-optimal node family;
* ``log_energy_maximizer``: an independent numerical ascent of the
  logarithmic energy itself.

For k >= 4 the two differ in the third decimal (k = 4: interior 0.25/0.75
versus (1 +- 1/sqrt(5))/2 ~ 0.2764/0.7236), so callers comparing the small-q
minimizer against "the limit" should prefer the computed maximizer.
"""

from math import comb, exp
from typing import TYPE_CHECKING

import numpy as np

from .descent import projected_descent
from .errors import LogEnergyCollisionError, NonConvergenceError
from .kernel import Configuration, KernelParam, _pair_indices

if TYPE_CHECKING:  # import cycle: solver pulls lobatto_points for its starts
    from .solver import SolverConfig

__all__ = [
    "log_energy",
    "lobatto_points",
    "small_q_expansion",
    "log_energy_maximizer",
]

# Interior points of the log-energy ascent keep at least this separation;
# the true maximizer's gaps are many orders of magnitude wider.
_MIN_SEPARATION = 1e-9


def log_energy(config: Configuration) -> float:
    """Sum of log(x_j - x_i) over pairs; -inf would need a collision, so raise."""
    i, j = _pair_indices(config.k)
    d = config.points[j] - config.points[i]
    if config.k >= 2 and d.min() <= 0.0:
        raise LogEnergyCollisionError(
            "logarithmic energy requires strictly distinct points"
        )
    return float(np.log(d).sum())


def lobatto_points(k: int) -> Configuration:
    """Chebyshev-Lobatto nodes (1 - cos(j*pi/(k-1)))/2 for j = 0..k-1.

    The lower half is mirrored onto the upper half so the result is exactly
    reflection-symmetric in floating point (cos alone does not guarantee it).
    """
    if k < 2:
        raise ValueError("Lobatto nodes need k >= 2")
    j = np.arange(k, dtype=float)
    pts = (1.0 - np.cos(j * np.pi / (k - 1))) / 2.0
    half = k // 2
    pts[k - 1 - np.arange(half)] = 1.0 - pts[:half]
    if k % 2 == 1:
        pts[half] = 0.5
    return Configuration(pts)


def small_q_expansion(config: Configuration, kernel: KernelParam) -> float:
    """First-order expansion C(k,2)/e - q/e * log_energy(config).

    Agrees with the true energy up to a remainder quadratic in q.
    """
    return (comb(config.k, 2) - kernel.q * log_energy(config)) * exp(-1.0)


def _log_value_rows(y: np.ndarray) -> np.ndarray:
    """Negated log energy per row of interior points (for minimization)."""
    x = _assemble(y)
    i, j = _pair_indices(x.shape[-1])
    d = x[..., j] - x[..., i]
    with np.errstate(divide="ignore", invalid="ignore"):
        val = -np.log(d).sum(axis=-1)
    return np.where(np.isfinite(val), val, np.inf)


def _log_grad_rows(y: np.ndarray) -> np.ndarray:
    x = _assemble(y)
    k = x.shape[-1]
    d = x[..., None, :] - x[..., :, None]  # [i, j] = x_j - x_i
    with np.errstate(divide="ignore", invalid="ignore"):
        inv = np.where(np.triu(np.ones((k, k), dtype=bool), 1), 1.0 / d, 0.0)
    inv = np.where(np.isfinite(inv), inv, 0.0)
    grad_log = inv.sum(axis=-2) - inv.sum(axis=-1)
    return -grad_log[..., 1:-1]


def _assemble(y: np.ndarray) -> np.ndarray:
    shape = y.shape[:-1]
    return np.concatenate([np.zeros(shape + (1,)), y, np.ones(shape + (1,))], axis=-1)


def _project_strict(y: np.ndarray) -> np.ndarray:
    """Sorted interior points in (0, 1) with a minimum pairwise separation."""
    y = np.sort(y, axis=-1)
    n = y.shape[-1]
    y[..., 0] = np.maximum(y[..., 0], _MIN_SEPARATION)
    for col in range(1, n):
        y[..., col] = np.maximum(y[..., col], y[..., col - 1] + _MIN_SEPARATION)
    return np.minimum(y, 1.0 - _MIN_SEPARATION * (n - np.arange(n)))


def log_energy_maximizer(
    k: int, solver: "SolverConfig | None" = None
) -> Configuration:
    """Configuration maximizing the logarithmic energy, endpoints pinned.

    Computed by projected ascent started from the Chebyshev-Lobatto nodes;
    the objective is strictly concave on ordered interior points, so the
    ascent has a single basin.  Raises NonConvergenceError if the gradient
    tolerance is not reached.
    """
    from .solver import SolverConfig

    if k < 2:
        raise ValueError("the pinned-endpoint maximizer needs k >= 2")
    solver = solver or SolverConfig()
    if k == 2:
        return Configuration([0.0, 1.0])

    y0 = lobatto_points(k).points[1:-1][None, :]
    result = projected_descent(
        y0,
        value_fn=_log_value_rows,
        grad_fn=_log_grad_rows,
        project_fn=_project_strict,
        max_iterations=solver.max_iterations,
        grad_tolerance=solver.grad_tolerance,
        energy_tolerance=solver.energy_tolerance,
    )
    if not bool(result.converged[0]):
        raise NonConvergenceError(
            f"log-energy ascent for k={k} stopped at projected-gradient norm "
            f"{result.pg_norm[0]:.3e} > {solver.grad_tolerance}"
        )
    return Configuration(_assemble(result.x)[0])
