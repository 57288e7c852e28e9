"""Hand-rolled SVG rendering of the spiral and the behaviors visited on it.

No plotting library: the output must be byte-for-byte reproducible, and the
scene is just a polyline, a set of dots and a start marker.  Dot count is
capped by deterministic striding so cumulative panels stay a manageable size.
"""

from __future__ import annotations

import math

import numpy as np

from .spiral import SpiralParams, spiral_point

__all__ = ["render_svg", "emit_svg"]

SIZE = 720
MARGIN = 30
MAX_DOTS = 20000
CURVE_STEP = 0.02  # curve parameter increment between polyline vertices


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Projection:
    def __init__(self, params: SpiralParams):
        extent = params.extent
        self.scale = (SIZE - 2 * MARGIN) / (2 * extent)
        self.extent = extent

    def __call__(self, x: float, y: float) -> tuple:
        px = MARGIN + (x + self.extent) * self.scale
        py = MARGIN + (self.extent - y) * self.scale
        return px, py


def render_svg(ts, params: SpiralParams, init_t0: float, header_items=()) -> str:
    """SVG document: spiral polyline, one dot per behavior, start marker."""
    proj = _Projection(params)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
    ]
    for key, value in header_items:
        text = f"{key} = {value}".replace("--", "- -")
        parts.append(f"<!-- {text} -->")
    parts.append(f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>')

    n_curve = int(math.floor(params.t_max / CURVE_STEP)) + 1
    curve_ts = np.linspace(0.0, params.t_max, n_curve)
    points = []
    for t in curve_ts:
        p = spiral_point(float(t), params)
        px, py = proj(p.x, p.y)
        points.append(f"{_fmt(px)},{_fmt(py)}")
    parts.append(
        f'<polyline points="{" ".join(points)}" fill="none" '
        'stroke="#bbbbbb" stroke-width="1"/>'
    )

    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    if ts.size > MAX_DOTS:
        stride = int(math.ceil(ts.size / MAX_DOTS))
        ts = ts[::stride]
    for t in ts:
        p = spiral_point(float(t), params)
        px, py = proj(p.x, p.y)
        parts.append(
            f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="1.6" '
            'fill="#1f77b4" fill-opacity="0.55"/>'
        )

    start = spiral_point(init_t0, params)
    sx, sy = proj(start.x, start.y)
    parts.append(
        f'<circle cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="5" fill="#d62728" '
        'stroke="black" stroke-width="1"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_svg(ts, params: SpiralParams, init_t0: float, path: str, header_items=()):
    document = render_svg(ts, params, init_t0, header_items)
    with open(path, "w", newline="\n") as fh:
        fh.write(document)
