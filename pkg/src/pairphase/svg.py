"""Hand-emitted SVG renderings of phase diagrams and flow trajectories.

No plotting dependency: both emitters write a fixed 800x600 document with
inline styling and no external references, so the output is byte-stable
across runs and safe to embed.  Numbers are formatted with fixed precision
to keep repeat runs identical.
"""

from typing import Iterable, Sequence

import numpy as np

__all__ = ["CLASSIFICATION_COLORS", "phase_diagram_svg", "flow_svg"]

WIDTH = 800
HEIGHT = 600
_MARGIN_LEFT = 70
_MARGIN_RIGHT = 30
_MARGIN_TOP = 40
_MARGIN_BOTTOM = 60

# Phase classifications -> fill colors (documented in docs/formats.md).
CLASSIFICATION_COLORS = {
    "collision_free": "#2166ac",
    "partial_clustering": "#e08214",
    "endpoint_only": "#b2182b",
}
_NONCONVERGED_STROKE = "#555555"
_FLOW_STROKE = "#2166ac"
_REFERENCE_STROKE = "#777777"


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]


def _plot_box() -> tuple[float, float, float, float]:
    """Left, top, width, height of the data region."""
    return (
        _MARGIN_LEFT,
        _MARGIN_TOP,
        WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT,
        HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM,
    )


def _axis_label(x: float, y: float, text: str, anchor: str = "middle") -> str:
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
        f'font-size="14" text-anchor="{anchor}" fill="#000000">{text}</text>'
    )


def phase_diagram_svg(
    cells: Iterable[tuple[int, float, str, bool]],
    q_reference: Sequence[float] = (),
) -> str:
    """Scatter of phase cells: exponent q horizontal, point count k vertical.

    ``cells`` yields (k, q, classification, converged); unknown
    classifications fall back to gray.  ``q_reference`` values (e.g. 1 and
    the odd critical exponent) are drawn as dashed vertical lines when they
    lie inside the plotted range.
    """
    cells = list(cells)
    if not cells:
        raise ValueError("phase diagram needs at least one cell")
    left, top, width, height = _plot_box()
    ks = sorted({c[0] for c in cells})
    qs = sorted({c[1] for c in cells})
    q_lo, q_hi = min(qs), max(qs)
    k_lo, k_hi = min(ks), max(ks)
    q_span = (q_hi - q_lo) or 1.0
    k_span = float(k_hi - k_lo) or 1.0

    def x_of(q: float) -> float:
        return left + (q - q_lo) / q_span * width

    def y_of(k: float) -> float:
        return top + height - (k - k_lo) / k_span * height

    parts = _header("Phase diagram")
    parts.append(
        f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" fill="none" stroke="#000000"/>'
    )
    for q_ref in q_reference:
        if not (q_lo <= q_ref <= q_hi):
            continue
        x = x_of(q_ref)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(top)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(top + height)}" stroke="{_REFERENCE_STROKE}" '
            f'stroke-dasharray="6 4"/>'
        )
        parts.append(_axis_label(x, top - 8, f"q = {q_ref:.6g}"))
    for q in qs:
        x = x_of(q)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(top + height)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(top + height + 6)}" stroke="#000000"/>'
        )
        parts.append(_axis_label(x, top + height + 24, f"{q:.2f}"))
    for k in ks:
        y = y_of(k)
        parts.append(
            f'<line x1="{_fmt(left - 6)}" y1="{_fmt(y)}" x2="{_fmt(left)}" '
            f'y2="{_fmt(y)}" stroke="#000000"/>'
        )
        parts.append(_axis_label(left - 12, y + 5, str(k), anchor="end"))
    parts.append(_axis_label(left + width / 2, HEIGHT - 16, "kernel exponent q"))
    parts.append(
        f'<text x="20" y="{_fmt(top + height / 2)}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle" fill="#000000" '
        f'transform="rotate(-90 20 {_fmt(top + height / 2)})">points k</text>'
    )
    for k, q, classification, converged in cells:
        color = CLASSIFICATION_COLORS.get(classification, "#999999")
        stroke = (
            f' stroke="{_NONCONVERGED_STROKE}" stroke-width="2" '
            f'stroke-dasharray="2 2"'
            if not converged
            else ""
        )
        parts.append(
            f'<circle cx="{_fmt(x_of(q))}" cy="{_fmt(y_of(k))}" r="6" '
            f'fill="{color}"{stroke}/>'
        )
    legend_y = top + 16
    for name, color in CLASSIFICATION_COLORS.items():
        parts.append(
            f'<circle cx="{_fmt(left + 14)}" cy="{_fmt(legend_y - 4)}" r="6" '
            f'fill="{color}"/>'
        )
        parts.append(_axis_label(left + 26, legend_y, name, anchor="start"))
        legend_y += 20
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def flow_svg(frames: Sequence[tuple[int, np.ndarray]]) -> str:
    """Trajectory plot: positions in [0, 1] horizontal, time downward.

    ``frames`` is the recorded (step_index, positions) sequence; one
    polyline is drawn per point index, so coincident points overdraw.
    """
    if not frames:
        raise ValueError("flow plot needs at least one frame")
    left, top, width, height = _plot_box()
    last_step = frames[-1][0] or 1
    k = len(frames[0][1])

    def x_of(pos: float) -> float:
        return left + pos * width

    def y_of(step: int) -> float:
        return top + (step / last_step) * height

    parts = _header("Gradient flow")
    parts.append(
        f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" fill="none" stroke="#000000"/>'
    )
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        x = x_of(tick)
        parts.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(top + height)}" x2="{_fmt(x)}" '
            f'y2="{_fmt(top + height + 6)}" stroke="#000000"/>'
        )
        parts.append(_axis_label(x, top + height + 24, f"{tick:.2f}"))
    for fraction in (0.0, 0.5, 1.0):
        step = int(round(fraction * last_step))
        y = y_of(step)
        parts.append(
            f'<line x1="{_fmt(left - 6)}" y1="{_fmt(y)}" x2="{_fmt(left)}" '
            f'y2="{_fmt(y)}" stroke="#000000"/>'
        )
        parts.append(_axis_label(left - 12, y + 5, str(step), anchor="end"))
    parts.append(_axis_label(left + width / 2, HEIGHT - 16, "position"))
    parts.append(
        f'<text x="20" y="{_fmt(top + height / 2)}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle" fill="#000000" '
        f'transform="rotate(-90 20 {_fmt(top + height / 2)})">step</text>'
    )
    for index in range(k):
        coords = " ".join(
            f"{_fmt(x_of(float(points[index])))},{_fmt(y_of(step))}"
            for step, points in frames
        )
        parts.append(
            f'<polyline points="{coords}" fill="none" '
            f'stroke="{_FLOW_STROKE}" stroke-width="1.5" stroke-opacity="0.85"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
