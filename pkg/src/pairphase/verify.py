"""Machine-checkable verification suites over the whole library.

Fifteen numbered criteria cover the minimizer tables, the branch algebra,
the small-exponent asymptotics, stationarity, and flow/solver agreement.
Suites bundle them by area (``tables``, ``branches``, ``asymptotics``,
``kkt``); ``all`` runs every criterion including the cross-module flow
agreement check.  Results are plain data, ready for JSON serialization,
and repeat runs produce identical bytes: every random draw is seeded and
no timings or timestamps enter the report body.

A criterion that fails is reported with the offending cells attached;
nothing is retried or loosened here.  Known-failing checks are documented
in the README rather than weakened.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .asymptotics import log_energy_maximizer, small_q_expansion
from .branches import critical_exponent, odd_branch_energies, odd_critical_exact
from .flow import FlowConfig, run_flow
from .kernel import (
    Configuration,
    KernelParam,
    _energy_nd,
    _gradient_nd,
    _positions_from_gaps,
    energy,
)
from .kkt import cluster_summary, clustering_law, kkt_report
from .reference import (
    BRANCH_CHECKPOINTS_K11,
    EVEN_CRITICAL_EXPONENTS,
    MINIMIZERS_Q1,
    MINIMIZERS_Q_HALF,
    ODD_CRITICAL_EXPONENT,
)
from .solver import SolverConfig, minimize

__all__ = [
    "CriterionResult",
    "VerifyReport",
    "SUITES",
    "run_suite",
    "report_as_dict",
]

# Criteria grouped by area.  ``all`` additionally runs the flow agreement
# check (15), which crosses module boundaries and belongs to no single area.
SUITES: dict[str, tuple[int, ...]] = {
    "tables": (4, 5, 6, 7, 8),
    "branches": (1, 2, 3, 12),
    "asymptotics": (13, 14),
    "kkt": (9, 10, 11),
    "all": tuple(range(1, 16)),
}

_COORD_TOL = 1e-4  # per-coordinate tolerance against the published tables


@dataclass(frozen=True)
class CriterionResult:
    """Outcome of one numbered criterion."""

    number: int
    name: str
    passed: bool
    detail: str
    cells: tuple[dict, ...] = ()


@dataclass(frozen=True)
class VerifyReport:
    """All criteria of one suite, in criterion order."""

    suite: str
    passed: bool
    criteria: tuple[CriterionResult, ...]


@lru_cache(maxsize=None)
def _solve(k: int, q: float):
    """Shared minimize cache: criteria overlap heavily in (k, q) cells."""
    import warnings

    from .errors import NonConvergenceWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonConvergenceWarning)
        return minimize(k, KernelParam(q))


def _finite_or_none(value: float) -> float | None:
    return float(value) if math.isfinite(value) else None


def _stack_counts(points: np.ndarray) -> tuple[int, int]:
    return int(np.count_nonzero(points == 0.0)), int(
        np.count_nonzero(points == 1.0)
    )


# ---------------------------------------------------------------------------
# Individual criteria.
# ---------------------------------------------------------------------------


def _criterion_1() -> CriterionResult:
    c = odd_critical_exact()
    residual = abs(
        2.0 * math.exp(-(2.0 ** (-c.value))) - (1.0 + math.exp(-1.0))
    )
    err = abs(c.value - ODD_CRITICAL_EXPONENT)
    passed = err <= 5e-10 and residual < 1e-14
    return CriterionResult(
        1,
        "odd-critical-exact",
        passed,
        f"value {c.value:.12f}, reference error {err:.2e}, "
        f"defining residual {residual:.2e}",
    )


def _criterion_2() -> CriterionResult:
    cells = []
    for k, want in EVEN_CRITICAL_EXPONENTS.items():
        got = critical_exponent(k).value
        cells.append(
            {
                "k": k,
                "value": float(got),
                "reference": want,
                "error": float(abs(got - want)),
                "passed": bool(abs(got - want) <= 1e-6),
            }
        )
    passed = all(c["passed"] for c in cells)
    worst = max(c["error"] for c in cells)
    return CriterionResult(
        2,
        "even-critical-exponents",
        passed,
        f"nine bisection values vs reference, worst error {worst:.2e}",
        tuple(cells),
    )


def _criterion_3() -> CriterionResult:
    lo = odd_branch_energies(5, KernelParam(1.35))
    hi = odd_branch_energies(5, KernelParam(1.43))
    checks = [
        ("interior_at_1.35", lo.e_int),
        ("endpoint", lo.e_end),
        ("interior_at_1.43", hi.e_int),
    ]
    cells = [
        {
            "name": name,
            "value": float(got),
            "reference": BRANCH_CHECKPOINTS_K11[name],
            "passed": bool(abs(got - BRANCH_CHECKPOINTS_K11[name]) <= 1e-6),
        }
        for name, got in checks
    ]
    return CriterionResult(
        3,
        "branch-checkpoints-k11",
        all(c["passed"] for c in cells),
        "closed-form k=11 branch energies at q = 1.35 and 1.43",
        tuple(cells),
    )


def _table_criterion(number: int, name: str, q: float, table) -> CriterionResult:
    cells = []
    for k, want in table.items():
        result = _solve(k, q)
        got = result.configuration.points
        want_arr = np.asarray(want)
        coord_err = float(np.abs(got - want_arr).max())
        stacks_got = _stack_counts(got)
        stacks_want = _stack_counts(want_arr)
        ok = coord_err <= _COORD_TOL and stacks_got == stacks_want
        cells.append(
            {
                "k": k,
                "coordinate_error": coord_err,
                "stacks": list(stacks_got),
                "stacks_expected": list(stacks_want),
                "converged": result.converged,
                "passed": bool(ok),
            }
        )
    worst = max(c["coordinate_error"] for c in cells)
    return CriterionResult(
        number,
        name,
        all(c["passed"] for c in cells),
        f"k = 1..10 at q = {q}, worst coordinate error {worst:.2e}",
        tuple(cells),
    )


def _criterion_4() -> CriterionResult:
    return _table_criterion(4, "minimizer-table-q1", 1.0, MINIMIZERS_Q1)


def _criterion_5() -> CriterionResult:
    return _table_criterion(5, "minimizer-table-q-half", 0.5, MINIMIZERS_Q_HALF)


def _criterion_6() -> CriterionResult:
    cells = []
    for k in range(2, 21):
        result = _solve(k, 1.0)
        summary = cluster_summary(result)
        want = clustering_law(k)
        ok = summary.m_observed == want
        cell = {
            "k": k,
            "m_observed": summary.m_observed,
            "m_predicted": want,
            "passed": bool(ok),
        }
        if not ok:
            cell["configuration"] = [float(p) for p in result.configuration.points]
        cells.append(cell)
    return CriterionResult(
        6,
        "clustering-law",
        all(c["passed"] for c in cells),
        "endpoint stack growth min(left,right) = floor((k+1)/3) for q = 1, k = 2..20",
        tuple(cells),
    )


def _criterion_7() -> CriterionResult:
    cells = []
    for k in range(2, 11):
        result = _solve(k, 2.0)
        left, right = _stack_counts(result.configuration.points)
        ok = result.interior_active == 1 and abs(left - right) <= 1
        cells.append(
            {
                "k": k,
                "left_stack": left,
                "right_stack": right,
                "interior_active": result.interior_active,
                "passed": bool(ok),
            }
        )
    return CriterionResult(
        7,
        "endpoint-splits-q2",
        all(c["passed"] for c in cells),
        "balanced endpoint splits with one spanning gap at q = 2, k = 2..10",
        tuple(cells),
    )


def _criterion_8() -> CriterionResult:
    cells = []
    for q in (0.3, 0.5, 0.7, 0.9):
        for k in range(3, 11):
            result = _solve(k, q)
            min_gap = float(np.diff(result.configuration.points).min())
            ok = min_gap > 1e-6
            cells.append(
                {
                    "k": k,
                    "q": q,
                    "min_gap": min_gap,
                    "converged": result.converged,
                    "passed": bool(ok),
                }
            )
    failing = [c for c in cells if not c["passed"]]
    detail = "every minimizer gap > 1e-6 for q in {0.3,0.5,0.7,0.9}, k = 3..10"
    if failing:
        worst = ", ".join(
            f"(k={c['k']}, q={c['q']}) gap {c['min_gap']:.2e}" for c in failing
        )
        detail += f"; failing cells: {worst}"
    return CriterionResult(
        8, "collision-free-small-q", not failing, detail, tuple(cells)
    )


def _criterion_9() -> CriterionResult:
    solver = SolverConfig()
    cells = []
    for q in (1.0, 1.2, 2.0):
        kernel = KernelParam(q)
        for k in range(3, 13):
            result = _solve(k, q)
            report = kkt_report(result, kernel, solver)
            violation = report.max_inactive_violation
            ok = report.max_active_deviation < 1e-7 and violation < 1e-7
            cells.append(
                {
                    "k": k,
                    "q": q,
                    "max_active_deviation": float(report.max_active_deviation),
                    "max_inactive_violation": _finite_or_none(violation),
                    "converged": result.converged,
                    "passed": bool(ok),
                }
            )
    worst = max(c["max_active_deviation"] for c in cells)
    return CriterionResult(
        9,
        "kkt-stationarity",
        all(c["passed"] for c in cells),
        f"multiplier consistency at minimizers, worst active deviation {worst:.2e}",
        tuple(cells),
    )


def _criterion_10() -> CriterionResult:
    rng = np.random.default_rng(20240817)
    qs = (0.5, 1.0, 1.4, 2.0)
    worst = 0.0
    count = 0
    while count < 200:
        k = int(rng.integers(2, 13))
        points = np.sort(rng.uniform(0.0, 1.0, k))
        if k >= 2 and np.diff(points).min() <= 1e-3:
            continue
        q = qs[count % 4]
        grad = _gradient_nd(points, q)
        h = 1e-5
        fd = np.empty(k)
        for idx in range(k):
            shifted = np.repeat(points[None, :], 4, axis=0)
            shifted[0, idx] += 2 * h
            shifted[1, idx] += h
            shifted[2, idx] -= h
            shifted[3, idx] -= 2 * h
            f = _energy_nd(shifted, q)
            fd[idx] = (-f[0] + 8.0 * f[1] - 8.0 * f[2] + f[3]) / (12.0 * h)
        rel = float(
            np.abs(grad - fd).max() / max(1.0, np.abs(grad).max())
        )
        worst = max(worst, rel)
        count += 1
    passed = worst < 1e-6
    return CriterionResult(
        10,
        "gradient-finite-difference",
        passed,
        f"200 random configurations, worst relative error {worst:.2e}",
    )


def _criterion_11() -> CriterionResult:
    rng = np.random.default_rng(31415926)
    k = 6
    cells = []
    for q in (1.0, 1.5, 2.0):
        violations = 0
        worst = 0.0
        for _ in range(1000):
            g1 = rng.dirichlet(np.ones(k - 1))
            g2 = rng.dirichlet(np.ones(k - 1))
            theta = rng.uniform()
            mid = theta * g1 + (1.0 - theta) * g2
            stack = np.stack([g1, g2, mid])
            e1, e2, e_mid = _energy_nd(_positions_from_gaps(stack), q)
            excess = e_mid - (theta * e1 + (1.0 - theta) * e2)
            if excess > 1e-12:
                violations += 1
                worst = max(worst, float(excess))
        cells.append(
            {
                "q": q,
                "violations": violations,
                "worst_excess": worst,
                "passed": violations == 0,
            }
        )
    failing = [c for c in cells if not c["passed"]]
    detail = "1000 random chord tests per exponent on the gap simplex (k = 6)"
    if failing:
        detail += "; violations at " + ", ".join(
            f"q={c['q']} ({c['violations']}/1000, worst {c['worst_excess']:.3f})"
            for c in failing
        )
    return CriterionResult(
        11, "convexity-chords", not failing, detail, tuple(cells)
    )


def _criterion_12() -> CriterionResult:
    cells = []
    for m in range(1, 11):
        for q in (1.0, 1.2, 1.39636, 1.5, 2.0):
            b = odd_branch_energies(m, KernelParam(q))
            target = m * (
                2.0 * math.exp(-(2.0 ** (-q))) - (1.0 + math.exp(-1.0))
            )
            err = abs(b.e_int - b.e_end - target)
            cells.append(
                {
                    "m": m,
                    "q": q,
                    "identity_error": float(err),
                    "passed": bool(err < 1e-12),
                }
            )
    worst = max(c["identity_error"] for c in cells)
    return CriterionResult(
        12,
        "branch-difference-identity",
        all(c["passed"] for c in cells),
        f"interior minus endpoint branch equals the closed form, worst error {worst:.2e}",
        tuple(cells),
    )


def _criterion_13() -> CriterionResult:
    configs = [
        Configuration([0.0, 0.5, 1.0]),
        Configuration(MINIMIZERS_Q_HALF[4]),
        Configuration(np.linspace(0.0, 1.0, 5)),
    ]
    cells = []
    for index, config in enumerate(configs):
        remainders = {}
        for q in (0.02, 0.01):
            kernel = KernelParam(q)
            remainders[q] = abs(
                energy(config, kernel) - small_q_expansion(config, kernel)
            )
        ratio = (
            remainders[0.02] / remainders[0.01]
            if remainders[0.01] > 0.0
            else float("inf")
        )
        cells.append(
            {
                "configuration_index": index,
                "remainder_at_0.02": float(remainders[0.02]),
                "remainder_at_0.01": float(remainders[0.01]),
                "halving_ratio": _finite_or_none(ratio),
                "passed": bool(3.5 <= ratio <= 4.5),
            }
        )
    ratios = ", ".join(
        f"{c['halving_ratio']:.2f}" if c["halving_ratio"] is not None else "inf"
        for c in cells
    )
    return CriterionResult(
        13,
        "small-q-remainder-halving",
        all(c["passed"] for c in cells),
        f"remainder halving ratios [{ratios}] against the expected window [3.5, 4.5]",
        tuple(cells),
    )


def _criterion_14() -> CriterionResult:
    cells = []
    for k in range(3, 9):
        result = _solve(k, 0.01)
        target = log_energy_maximizer(k)
        deviation = float(
            np.abs(result.configuration.points - target.points).max()
        )
        cells.append(
            {
                "k": k,
                "max_deviation": deviation,
                "converged": result.converged,
                "passed": bool(deviation <= 0.02),
            }
        )
    worst = max(c["max_deviation"] for c in cells)
    return CriterionResult(
        14,
        "small-q-limit-nodes",
        all(c["passed"] for c in cells),
        f"q = 0.01 minimizers vs the log-energy maximizer, worst deviation {worst:.2e}",
        tuple(cells),
    )


def _criterion_15() -> CriterionResult:
    q_odd = odd_critical_exact().value
    flow = FlowConfig()
    cells = []
    for k in (9, 10):
        for q in (0.1, 1.0, q_odd, 2.0):
            kernel = KernelParam(q)
            trajectory = run_flow(k, kernel, flow)
            flow_energy = energy(trajectory.final, kernel)
            solve_energy = _solve(k, q).energy
            gap = flow_energy - solve_energy
            cells.append(
                {
                    "k": k,
                    "q": float(q),
                    "flow_energy": float(flow_energy),
                    "solver_energy": float(solve_energy),
                    "energy_gap": float(gap),
                    "passed": bool(abs(gap) <= 1e-6),
                }
            )
    failing = [c for c in cells if not c["passed"]]
    detail = "terminal flow energy vs global solver on (k, q) in {9,10} x {0.1, 1, q_odd, 2}"
    if failing:
        detail += "; failing cells: " + ", ".join(
            f"(k={c['k']}, q={c['q']:.6g}) gap {c['energy_gap']:.3e}" for c in failing
        )
    return CriterionResult(
        15, "flow-solver-agreement", not failing, detail, tuple(cells)
    )


_CRITERIA = {
    1: _criterion_1,
    2: _criterion_2,
    3: _criterion_3,
    4: _criterion_4,
    5: _criterion_5,
    6: _criterion_6,
    7: _criterion_7,
    8: _criterion_8,
    9: _criterion_9,
    10: _criterion_10,
    11: _criterion_11,
    12: _criterion_12,
    13: _criterion_13,
    14: _criterion_14,
    15: _criterion_15,
}


def run_suite(suite: str) -> VerifyReport:
    """Run one named suite and return its report.

    Criteria run in numeric order; the report's ``passed`` is the
    conjunction over criteria.  Unknown suite names raise ValueError.
    """
    if suite not in SUITES:
        raise ValueError(
            f"unknown suite {suite!r}; expected one of {sorted(SUITES)}"
        )
    criteria = tuple(_CRITERIA[number]() for number in SUITES[suite])
    return VerifyReport(
        suite=suite,
        passed=all(c.passed for c in criteria),
        criteria=criteria,
    )


def report_as_dict(report: VerifyReport) -> dict:
    """Plain-data form of a report, ready for json.dumps."""
    return {
        "suite": report.suite,
        "passed": report.passed,
        "criteria": [
            {
                "number": c.number,
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
                "cells": list(c.cells),
            }
            for c in report.criteria
        ],
    }
