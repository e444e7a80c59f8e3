"""Command-line surface: minimization, critical exponents, phase diagrams,
flows, small-q node comparison, and the verification suites.

Every subcommand emits a deterministic payload (JSON, CSV, or text) plus a
run manifest recording the command, all effective parameters, the tool
version, and a UTC timestamp.  Repeat runs with identical arguments differ
only in the timestamp.  Exit codes: 0 success, 1 usage error, 2 numerical
failure (non-convergence, bracket failure, or failing verification
criteria).
"""

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .asymptotics import lobatto_points, log_energy_maximizer
from .branches import critical_exponent, odd_critical_exact
from .errors import (
    BracketFailureError,
    NonConvergenceError,
    NonConvergenceWarning,
    UnsupportedRegimeError,
)
from .flow import FlowConfig, Trajectory, run_flow
from .kernel import KernelParam
from .kkt import cluster_summary, kkt_report
from .solver import MinimizeResult, SolverConfig, minimize
from .svg import flow_svg, phase_diagram_svg
from .verify import SUITES, report_as_dict, run_suite

__all__ = ["main", "PhaseCell", "RunManifest", "classify_phase"]

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_NUMERICAL = 2


@dataclass(frozen=True)
class RunManifest:
    """Provenance block attached to every emitted payload."""

    command: str
    parameters: dict
    tool_version: str
    timestamp: str


@dataclass(frozen=True)
class PhaseCell:
    """One (k, q) cell of the phase diagram."""

    k: int
    q: float
    classification: str
    left_stack: int
    right_stack: int
    interior_active: int
    energy: float
    converged: bool


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage failures exit 1 instead of 2."""

    def error(self, message):  # noqa: A002 - argparse API
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# Shared plumbing.
# ---------------------------------------------------------------------------


def _manifest(command: str, parameters: dict) -> dict:
    return asdict(
        RunManifest(
            command=command,
            parameters=parameters,
            tool_version=__version__,
            timestamp=datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
        )
    )


def _solver_parameters(solver: SolverConfig) -> dict:
    return {
        "max_iterations": solver.max_iterations,
        "grad_tolerance": solver.grad_tolerance,
        "energy_tolerance": solver.energy_tolerance,
        "multistart_count": solver.multistart_count,
        "rng_seed": solver.rng_seed,
        "zero_gap_threshold": solver.zero_gap_threshold,
    }


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _emit_with_manifest(text: str, path: str | None, manifest: dict) -> None:
    """Write a CSV payload; files get a manifest sidecar, stdout does not."""
    _emit(text, path)
    if path is not None:
        with open(path + ".manifest.json", "w", encoding="utf-8") as handle:
            json.dump({"manifest": manifest}, handle, indent=2)
            handle.write("\n")


def _svg_with_manifest(svg: str, manifest: dict) -> str:
    comment = (
        "<!-- manifest: "
        + json.dumps(manifest).replace("--", "&#45;&#45;")
        + " -->\n"
    )
    return svg.replace("</svg>", comment + "</svg>")


def _positions6(points) -> list[str]:
    return [f"{p:.6f}" for p in points]


def _stack_counts(points: np.ndarray) -> tuple[int, int]:
    return int(np.count_nonzero(points == 0.0)), int(
        np.count_nonzero(points == 1.0)
    )


def classify_phase(result: MinimizeResult) -> str:
    """endpoint_only < collision_free < partial_clustering precedence.

    A configuration with no strict-interior point is endpoint_only even when
    its points are distinct (k <= 2); otherwise fully distinct points are
    collision_free, and anything else has partial clustering.
    """
    points = result.configuration.points
    interior = np.count_nonzero((points > 0.0) & (points < 1.0))
    if interior == 0:
        return "endpoint_only"
    if points.size < 2 or np.diff(points).min() > 0.0:
        return "collision_free"
    return "partial_clustering"


def _minimize_quiet(k: int, kernel: KernelParam, solver: SolverConfig):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonConvergenceWarning)
        return minimize(k, kernel, solver)


# ---------------------------------------------------------------------------
# minimize
# ---------------------------------------------------------------------------


def _kkt_payload(result, kernel: KernelParam, solver: SolverConfig):
    if result.configuration.k < 2:
        return None
    try:
        report = kkt_report(result, kernel, solver)
    except UnsupportedRegimeError:
        return None
    violation = report.max_inactive_violation
    return {
        "lambda": float(report.lambda_estimate),
        "max_active_deviation": float(report.max_active_deviation),
        "max_inactive_violation": (
            float(violation) if np.isfinite(violation) else None
        ),
    }


def _cmd_minimize(args) -> int:
    solver = SolverConfig()
    kernel = KernelParam(args.q)
    result = _minimize_quiet(args.k, kernel, solver)
    clusters = cluster_summary(result)
    kkt = _kkt_payload(result, kernel, solver)
    manifest = _manifest(
        "minimize",
        {
            "k": args.k,
            "q": args.q,
            "format": args.format,
            "output": args.output,
            **_solver_parameters(solver),
        },
    )
    payload = {
        "manifest": manifest,
        "configuration": [float(p) for p in result.configuration.points],
        "energy": result.energy,
        "kkt": kkt,
        "clusters": {
            "left": clusters.left_stack,
            "right": clusters.right_stack,
            "interior": [float(p) for p in clusters.interior_points],
        },
    }
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(
            ["k", "q", "energy", "converged"]
            + [f"x_{i}" for i in range(1, args.k + 1)]
        )
        writer.writerow(
            [args.k, f"{args.q:.9f}", f"{result.energy:.9f}", result.converged]
            + _positions6(result.configuration.points)
        )
        text = buffer.getvalue()
    else:
        lines = [
            f"k = {args.k}, q = {args.q:.9g}",
            "configuration: (" + ", ".join(_positions6(result.configuration.points)) + ")",
            f"energy: {result.energy:.9f}",
        ]
        if kkt is None:
            lines.append("kkt: not applicable")
        else:
            violation = kkt["max_inactive_violation"]
            lines.append(
                f"kkt: lambda {kkt['lambda']:.9f}, "
                f"max active deviation {kkt['max_active_deviation']:.3e}, "
                "max inactive violation "
                + ("none (all gaps active)" if violation is None else f"{violation:.3e}")
            )
        lines.append(
            f"clusters: left {clusters.left_stack}, right {clusters.right_stack}, "
            "interior ("
            + ", ".join(_positions6(clusters.interior_points))
            + ")"
        )
        lines.append(
            f"converged: {'yes' if result.converged else 'NO'} "
            f"(projected gradient {result.projected_grad_norm:.3e}, "
            f"start {result.start_label})"
        )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return _EXIT_OK if result.converged else _EXIT_NUMERICAL


# ---------------------------------------------------------------------------
# critical
# ---------------------------------------------------------------------------


def _cmd_critical(args) -> int:
    if not 3 <= args.k_min <= args.k_max:
        raise _UsageError("need 3 <= --k-min <= --k-max")
    rows = []
    failures = []
    for k in range(args.k_min, args.k_max + 1):
        try:
            c = critical_exponent(k)
        except BracketFailureError as error:
            failures.append({"k": k, "error": str(error)})
            continue
        rows.append(
            {
                "k": k,
                "value": float(c.value),
                "method": c.method,
                "bracket_width": float(c.bracket_width),
            }
        )
    manifest = _manifest(
        "critical",
        {
            "k_min": args.k_min,
            "k_max": args.k_max,
            "format": args.format,
            "output": args.output,
        },
    )
    if args.format == "json":
        text = (
            json.dumps(
                {"manifest": manifest, "rows": rows, "failures": failures},
                indent=2,
            )
            + "\n"
        )
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["k", "value", "method", "bracket_width"])
        for row in rows:
            writer.writerow(
                [
                    row["k"],
                    f"{row['value']:.9f}",
                    row["method"],
                    f"{row['bracket_width']:.3e}",
                ]
            )
        text = buffer.getvalue()
    else:
        lines = [
            f"k = {row['k']:2d}: q_k = {row['value']:.9f}  "
            f"[{row['method']}, bracket width {row['bracket_width']:.3e}]"
            for row in rows
        ]
        lines += [f"k = {f['k']:2d}: FAILED ({f['error']})" for f in failures]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return _EXIT_NUMERICAL if failures else _EXIT_OK


# ---------------------------------------------------------------------------
# phase-diagram
# ---------------------------------------------------------------------------


def _cmd_phase_diagram(args) -> int:
    if args.k_min < 1 or args.k_min > args.k_max:
        raise _UsageError("need 1 <= --k-min <= --k-max")
    if not (args.q_min > 0.0 and args.q_min <= args.q_max):
        raise _UsageError("need 0 < --q-min <= --q-max")
    if args.q_steps < 1:
        raise _UsageError("--q-steps must be >= 1")
    solver = SolverConfig()
    qs = (
        np.linspace(args.q_min, args.q_max, args.q_steps)
        if args.q_steps > 1
        else np.array([args.q_min])
    )
    cells: list[PhaseCell] = []
    for k in range(args.k_min, args.k_max + 1):
        for q in qs:
            kernel = KernelParam(float(q))
            result = _minimize_quiet(k, kernel, solver)
            left, right = _stack_counts(result.configuration.points)
            cells.append(
                PhaseCell(
                    k=k,
                    q=float(q),
                    classification=classify_phase(result),
                    left_stack=left,
                    right_stack=right,
                    interior_active=result.interior_active,
                    energy=result.energy,
                    converged=result.converged,
                )
            )
    manifest = _manifest(
        "phase-diagram",
        {
            "k_min": args.k_min,
            "k_max": args.k_max,
            "q_min": args.q_min,
            "q_max": args.q_max,
            "q_steps": args.q_steps,
            "output_csv": args.output_csv,
            "output_svg": args.output_svg,
            **_solver_parameters(solver),
        },
    )
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        [
            "k",
            "q",
            "classification",
            "left_stack",
            "right_stack",
            "interior_active",
            "energy",
        ]
    )
    for cell in cells:
        label = cell.classification + ("" if cell.converged else ":nonconverged")
        writer.writerow(
            [
                cell.k,
                f"{cell.q:.9f}",
                label,
                cell.left_stack,
                cell.right_stack,
                cell.interior_active,
                f"{cell.energy:.9f}",
            ]
        )
    _emit_with_manifest(buffer.getvalue(), args.output_csv, manifest)
    if args.output_svg is not None:
        svg = phase_diagram_svg(
            [(c.k, c.q, c.classification, c.converged) for c in cells],
            q_reference=(1.0, odd_critical_exact().value),
        )
        _emit(_svg_with_manifest(svg, manifest), args.output_svg)
    return _EXIT_OK if any(c.converged for c in cells) else _EXIT_NUMERICAL


# ---------------------------------------------------------------------------
# flow
# ---------------------------------------------------------------------------


def _trajectory_csv(trajectory: Trajectory) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    k = trajectory.k
    writer.writerow(["step"] + [f"x_{i}" for i in range(1, k + 1)])
    for step, config in trajectory.frames:
        writer.writerow([step] + _positions6(config.points))
    return buffer.getvalue()


def _cmd_flow(args) -> int:
    flow = FlowConfig(
        step_size=args.tau,
        steps=args.steps,
        record_every=args.record_every,
        initial_shift=args.initial_shift,
    )
    kernel = KernelParam(args.q)
    trajectory = run_flow(args.k, kernel, flow)
    manifest = _manifest(
        "flow",
        {
            "k": args.k,
            "q": args.q,
            "tau": flow.step_size,
            "steps": flow.steps,
            "record_every": flow.record_every,
            "initial_shift": flow.initial_shift,
            "output_csv": args.output_csv,
            "output_svg": args.output_svg,
        },
    )
    _emit_with_manifest(_trajectory_csv(trajectory), args.output_csv, manifest)
    if args.output_svg is not None:
        svg = flow_svg(
            [(step, config.points) for step, config in trajectory.frames]
        )
        _emit(_svg_with_manifest(svg, manifest), args.output_svg)
    return _EXIT_OK


# ---------------------------------------------------------------------------
# fekete
# ---------------------------------------------------------------------------


def _cmd_fekete(args) -> int:
    if args.k < 2:
        raise _UsageError("--k must be >= 2")
    if not 0.0 < args.q_small < 0.1:
        raise _UsageError("--q-small must lie strictly between 0 and 0.1")
    solver = SolverConfig()
    lobatto = lobatto_points(args.k).points
    try:
        log_nodes = log_energy_maximizer(args.k, solver).points
    except NonConvergenceError as error:
        sys.stderr.write(f"log-energy ascent failed: {error}\n")
        return _EXIT_NUMERICAL
    result = _minimize_quiet(args.k, KernelParam(args.q_small), solver)
    rows = [
        ("lobatto", lobatto),
        ("log_energy_maximizer", log_nodes),
        ("small_q_minimizer", result.configuration.points),
    ]
    deviations = {
        f"{a}_vs_{b}": float(np.abs(pa - pb).max())
        for i, (a, pa) in enumerate(rows)
        for b, pb in (rows[j] for j in range(i + 1, len(rows)))
    }
    manifest = _manifest(
        "fekete",
        {
            "k": args.k,
            "q_small": args.q_small,
            "format": args.format,
            "output": args.output,
            **_solver_parameters(solver),
        },
    )
    if args.format == "json":
        payload = {
            "manifest": manifest,
            "rows": [
                {"source": name, "positions": [float(p) for p in pts]}
                for name, pts in rows
            ],
            "max_deviations": deviations,
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(
            ["source", "max_dev_vs_lobatto", "max_dev_vs_log_energy_maximizer",
             "max_dev_vs_small_q_minimizer"]
            + [f"x_{i}" for i in range(1, args.k + 1)]
        )
        for name, pts in rows:
            devs = []
            for other, opts in rows:
                if other == name:
                    devs.append("0.000000")
                else:
                    devs.append(f"{np.abs(pts - opts).max():.6f}")
            writer.writerow([name] + devs + _positions6(pts))
        text = buffer.getvalue()
    else:
        lines = [
            f"{name:22s} (" + ", ".join(_positions6(pts)) + ")"
            for name, pts in rows
        ]
        lines += [
            f"max deviation {pair}: {value:.6f}"
            for pair, value in deviations.items()
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return _EXIT_OK if result.converged else _EXIT_NUMERICAL


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    report = run_suite(args.suite)
    manifest = _manifest(
        "verify",
        {"suite": args.suite, "format": args.format, "output": args.output},
    )
    if args.format == "json":
        payload = {"manifest": manifest, **report_as_dict(report)}
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [
            f"{'PASS' if c.passed else 'FAIL'}  criterion {c.number:2d} "
            f"{c.name}: {c.detail}"
            for c in report.criteria
        ]
        lines.append(
            f"suite {report.suite}: "
            + ("all criteria passed" if report.passed else "FAILURES present")
        )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return _EXIT_OK if report.passed else _EXIT_NUMERICAL


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="pairphase",
        description=(
            "Minimizers, critical exponents, phase diagrams, and gradient "
            "flows of the pairwise exp(-d^q) energy on the unit interval."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_min = sub.add_parser("minimize", help="global minimizer for one (k, q)")
    p_min.add_argument("--k", type=int, required=True, help="number of points (>= 1)")
    p_min.add_argument("--q", type=float, required=True, help="kernel exponent (> 0)")
    p_min.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p_min.add_argument("--output", default=None, help="output path (default stdout)")
    p_min.set_defaults(func=_cmd_minimize)

    p_crit = sub.add_parser("critical", help="critical exponents q_k over a k range")
    p_crit.add_argument("--k-min", type=int, required=True)
    p_crit.add_argument("--k-max", type=int, required=True)
    p_crit.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p_crit.add_argument("--output", default=None)
    p_crit.set_defaults(func=_cmd_critical)

    p_phase = sub.add_parser(
        "phase-diagram", help="classify minimizers over a (k, q) grid"
    )
    p_phase.add_argument("--k-min", type=int, required=True)
    p_phase.add_argument("--k-max", type=int, required=True)
    p_phase.add_argument("--q-min", type=float, required=True)
    p_phase.add_argument("--q-max", type=float, required=True)
    p_phase.add_argument("--q-steps", type=int, required=True)
    p_phase.add_argument("--output-csv", default=None, help="CSV path (default stdout)")
    p_phase.add_argument("--output-svg", default=None, help="optional SVG path")
    p_phase.set_defaults(func=_cmd_phase_diagram)

    p_flow = sub.add_parser("flow", help="record a gradient-flow trajectory")
    p_flow.add_argument("--k", type=int, required=True)
    p_flow.add_argument("--q", type=float, required=True)
    p_flow.add_argument("--tau", type=float, default=FlowConfig.step_size)
    p_flow.add_argument("--steps", type=int, default=FlowConfig.steps)
    p_flow.add_argument(
        "--record-every", type=int, default=FlowConfig.record_every
    )
    p_flow.add_argument(
        "--initial-shift", type=float, default=FlowConfig.initial_shift
    )
    p_flow.add_argument("--output-csv", default=None, help="CSV path (default stdout)")
    p_flow.add_argument("--output-svg", default=None, help="optional SVG path")
    p_flow.set_defaults(func=_cmd_flow)

    p_fek = sub.add_parser(
        "fekete", help="compare small-q minimizer with closed-form node sets"
    )
    p_fek.add_argument("--k", type=int, required=True)
    p_fek.add_argument("--q-small", type=float, default=0.01)
    p_fek.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p_fek.add_argument("--output", default=None)
    p_fek.set_defaults(func=_cmd_fekete)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", choices=tuple(SUITES), default="all")
    p_ver.add_argument("--format", choices=("json", "text"), default="text")
    p_ver.add_argument("--output", default=None)
    p_ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as error:
        sys.stderr.write(f"error: {error}\n")
        return _EXIT_USAGE
    except (ValueError, OSError) as error:
        sys.stderr.write(f"error: {error}\n")
        return _EXIT_USAGE
    except (BracketFailureError, NonConvergenceError) as error:
        sys.stderr.write(f"numerical failure: {error}\n")
        return _EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
