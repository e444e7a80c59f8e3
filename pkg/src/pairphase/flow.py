"""Plain gradient-flow trajectory recorder.

Unlike the convergent solver, this module runs fixed-step steepest descent
from a near-uniform start and logs intermediate configurations, so the
approach to a minimizer can be plotted as one polyline per point (position
horizontal, time downward).  No line search is used on purpose: the
trajectory itself is the product, and adaptive steps would distort it.
"""

from dataclasses import dataclass, field

import numpy as np

from .kernel import Configuration, KernelParam, _gradient_nd, energy

__all__ = ["FlowConfig", "Trajectory", "initial_condition", "run_flow"]


@dataclass(frozen=True)
class FlowConfig:
    """Parameters of the fixed-step descent run."""

    step_size: float = 0.05
    steps: int = 20_000
    record_every: int = 50
    initial_shift: float = 0.02

    def __post_init__(self) -> None:
        if not self.step_size > 0:
            raise ValueError("step_size must be positive")
        if self.steps < 1:
            raise ValueError("steps must be positive")
        if self.record_every < 1:
            raise ValueError("record_every must be positive")
        if not 0.0 <= self.initial_shift <= 0.1:
            raise ValueError("initial_shift must lie in [0, 0.1]")


@dataclass(frozen=True)
class Trajectory:
    """A recorded descent path: strictly increasing (step, configuration) frames."""

    k: int
    kernel: KernelParam
    frames: tuple[tuple[int, Configuration], ...] = field(repr=False)

    @property
    def final(self) -> Configuration:
        return self.frames[-1][1]


def initial_condition(k: int, flow: FlowConfig) -> Configuration:
    """Uniformly spaced points pulled inward by the configured shift."""
    if k < 2:
        raise ValueError("flows need at least two points")
    shift = flow.initial_shift
    grid = np.arange(k, dtype=np.float64) / (k - 1)
    return Configuration(shift + (1.0 - 2.0 * shift) * grid)


def _project(x: np.ndarray) -> np.ndarray:
    """Clamp every coordinate to [0, 1], then restore ascending order.

    The energy depends only on the point multiset, so sorting is a valid
    projection onto the ordered cell.
    """
    return np.sort(np.clip(x, 0.0, 1.0))


def run_flow(k: int, kernel: KernelParam, flow: FlowConfig | None = None) -> Trajectory:
    """Iterate x <- project(x - tau * grad) for a fixed number of steps.

    Frames are recorded at step 0, every record_every steps, and at the
    final step.  Iterates stay in [0, 1]^k, so the run cannot diverge; it
    also need not converge — the step count, not a tolerance, ends it.
    """
    if flow is None:
        flow = FlowConfig()
    x = initial_condition(k, flow).points.copy()
    frames: list[tuple[int, Configuration]] = [(0, Configuration(x))]
    q = kernel.q
    tau = flow.step_size
    for n in range(1, flow.steps + 1):
        grad = _gradient_nd(x[None, :], q)[0]
        x = _project(x - tau * grad)
        if n % flow.record_every == 0 or n == flow.steps:
            frames.append((n, Configuration(x)))
    return Trajectory(k=k, kernel=kernel, frames=tuple(frames))
