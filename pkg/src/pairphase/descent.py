"""Batched projected-gradient engine shared by the solvers.

Many starting configurations descend in lockstep as rows of one array; each
row carries its own backtracking step size and freezes once it converges or
stalls.  Convergence is measured by the projected-gradient displacement
||x - P(x - t0 * grad)|| / t0 at a fixed probe step t0, which vanishes
exactly at constrained stationary points.

Descent runs in two per-row regimes.  While objective decreases are large
enough for a double to resolve, steps are chosen by Armijo backtracking.
Once backtracking can no longer certify a decrease (near a minimum the true
per-step decrease drops below the objective's float resolution long before
the gradient tolerance is met), the row switches to fixed steps guided by
the stationarity measure alone: a step is kept only if it lowers the
measure, and the step size halves otherwise.  That drives the measure to
its rounding floor without ever consulting the exhausted objective.
"""

from dataclasses import dataclass
from typing import Callable, Protocol

import numpy as np

__all__ = ["DescentResult", "projected_descent"]

_PROBE_STEP = 0.1  # fixed probe for the stationarity measure
_MIN_STEP = 1e-18  # a row whose step shrinks below this is stuck
_MAX_BACKTRACKS = 70
_PATIENCE = 400  # iterations without a new stationarity low before freezing
_PATIENCE_GAIN = 0.999  # a new low must beat the old one by this factor


class _ArrayFn(Protocol):
    def __call__(self, x: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class DescentResult:
    """Row-aligned outcome of a batched descent."""

    x: np.ndarray  # (rows, dim) final iterates
    value: np.ndarray  # (rows,) objective at x
    pg_norm: np.ndarray  # (rows,) projected-gradient displacement norm
    iterations: int  # lockstep iterations executed
    converged: np.ndarray  # (rows,) bool: pg_norm <= grad_tolerance


def _pg_norms(
    x: np.ndarray, grad: np.ndarray, project_fn: Callable[[np.ndarray], np.ndarray]
) -> np.ndarray:
    moved = project_fn(x - _PROBE_STEP * grad)
    return np.linalg.norm(x - moved, axis=1) / _PROBE_STEP


def projected_descent(
    x0: np.ndarray,
    value_fn: _ArrayFn,
    grad_fn: _ArrayFn,
    project_fn: _ArrayFn,
    *,
    max_iterations: int,
    grad_tolerance: float,
    energy_tolerance: float,
    initial_step: float = 0.1,
    shrink: float = 0.5,
    armijo: float = 1e-4,
) -> DescentResult:
    """Minimize value_fn row-wise over the set project_fn projects onto.

    Each row's line search starts at initial_step and resumes at twice the
    previously accepted size (capped at initial_step).  A row leaves the
    line-search regime when no step achieves an Armijo decrease larger
    than energy_tolerance (or the objective's own resolution, whichever is
    coarser), and polishes with stationarity-guided fixed steps from then
    on.  Rows stop at grad_tolerance, on a stalled stationarity measure,
    or when their step size underflows.
    """
    x = np.array(x0, dtype=np.float64, copy=True)
    if x.ndim != 2:
        raise ValueError("x0 must be a (rows, dim) array")
    rows, dim = x.shape
    if dim == 0 or rows == 0:
        zero = np.zeros(rows)
        return DescentResult(
            x=x,
            value=value_fn(x) if rows else zero,
            pg_norm=zero,
            iterations=0,
            converged=np.ones(rows, dtype=bool),
        )

    value = value_fn(x)
    grad = grad_fn(x)
    pg = _pg_norms(x, grad, project_fn)
    step = np.full(rows, initial_step)
    polishing = np.zeros(rows, dtype=bool)
    converged = pg <= grad_tolerance
    live = ~converged
    lowest_pg = pg.copy()
    stale = np.zeros(rows, dtype=np.int64)
    eps = np.finfo(np.float64).eps

    iteration = 0
    while iteration < max_iterations and np.any(live):
        iteration += 1
        idx = np.nonzero(live)[0]
        xs = x[idx]
        grads = grad[idx]
        values = value[idx]
        pgs = pg[idx]
        floor = np.maximum(energy_tolerance, 16.0 * eps * (1.0 + np.abs(values)))

        armijo_rows = ~polishing[idx]
        trial = np.where(
            armijo_rows, np.minimum(step[idx] * 2.0, initial_step), step[idx]
        )
        searching = np.ones(idx.size, dtype=bool)
        for _ in range(_MAX_BACKTRACKS):
            s = np.nonzero(searching)[0]
            if s.size == 0:
                break
            cand = project_fn(xs[s] - trial[s, None] * grads[s])
            cand_grad = grad_fn(cand)
            cand_pg = _pg_norms(cand, cand_grad, project_fn)
            cand_value = value_fn(cand)
            moved = np.linalg.norm(cand - xs[s], axis=1)
            decrease = values[s] - cand_value
            wanted = (armijo / trial[s]) * moved**2
            # Line-search regime: a certified sufficient decrease.
            good_armijo = armijo_rows[s] & (decrease >= wanted)
            # The certificate has run out of resolution: switch regimes.
            exhausted = armijo_rows[s] & (wanted <= floor[s]) & ~good_armijo
            armijo_rows[s[exhausted]] = False
            polishing[idx[s[exhausted]]] = True
            # Polish regime: the stationarity measure must drop.
            good_polish = ~armijo_rows[s] & (cand_pg < pgs[s])
            accept = good_armijo | good_polish
            acc = s[accept]
            if acc.size:
                xs[acc] = cand[accept]
                values[acc] = cand_value[accept]
                grads[acc] = cand_grad[accept]
                pgs[acc] = cand_pg[accept]
                searching[acc] = False
            rej = s[~accept]
            trial[rej] *= shrink
            dead = rej[trial[rej] < _MIN_STEP]
            if dead.size:
                searching[dead] = False
                live[idx[dead]] = False
        x[idx] = xs
        value[idx] = values
        grad[idx] = grads
        pg[idx] = pgs
        step[idx] = np.maximum(trial, _MIN_STEP)

        done = idx[pgs <= grad_tolerance]
        if done.size:
            converged[done] = True
            live[done] = False

        new_low = pgs < _PATIENCE_GAIN * lowest_pg[idx]
        lowest_pg[idx] = np.minimum(lowest_pg[idx], pgs)
        stale[idx] = np.where(new_low, 0, stale[idx] + 1)
        live[idx[stale[idx] >= _PATIENCE]] = False

    return DescentResult(
        x=x,
        value=value_fn(x),
        pg_norm=pg,
        iterations=iteration,
        converged=converged | (pg <= grad_tolerance),
    )
