"""SVG 1.1 rendering of a realized polygon, with optional star chords and boundary arcs."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import PolygonRealization

LAYERS = ("polygon", "chords", "arcs")


@dataclass(frozen=True)
class SvgStyle:
    size: int = 480
    margin: float = 0.06
    stroke_width: float = 1.5
    layers: tuple[str, ...] = ("polygon",)
    polygon_color: str = "#1f3b73"
    chord_color: str = "#b04a2e"
    arc_color: str = "#7a7a7a"

    def __post_init__(self):
        unknown = set(self.layers) - set(LAYERS)
        if unknown:
            raise ValueError(f"unknown layers {sorted(unknown)}; choose from {', '.join(LAYERS)}")
        if self.size <= 0:
            raise ValueError("canvas size must be positive")


def _fmt(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(rz: PolygonRealization, style: SvgStyle = SvgStyle()) -> str:
    """Deterministic SVG text; the drawing is centred and scaled to the canvas, y pointing up."""
    pts = np.vstack([rz.star_vertices, rz.polygon_vertices])
    if not np.all(np.isfinite(pts)):
        raise ValueError("realization has non-finite coordinates")
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = max(float(np.max(hi - lo)), 1e-12)
    scale = style.size * (1 - 2 * style.margin) / span
    mid = (lo + hi) / 2

    def xy(p) -> str:
        x = style.size / 2 + (p[0] - mid[0]) * scale
        y = style.size / 2 - (p[1] - mid[1]) * scale
        return f"{_fmt(x)} {_fmt(y)}"

    sw = _fmt(style.stroke_width)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{style.size}" height="{style.size}" '
        f'viewBox="0 0 {style.size} {style.size}">',
        f"<title>{','.join(map(str, rz.parts))}</title>",
    ]
    star = rz.star_vertices
    r = len(star)
    if "arcs" in style.layers:
        radius = _fmt(scale)
        lines.append(f'<g id="arcs" fill="none" stroke="{style.arc_color}" stroke-width="{sw}">')
        for c in rz.arc_centres:
            a, b = star[(c - 1) % r], star[(c + 1) % r]
            v = star[c]
            turn = (a[0] - v[0]) * (b[1] - v[1]) - (a[1] - v[1]) * (b[0] - v[0])
            # y is flipped on screen, so a counter-clockwise arc has sweep flag 0
            sweep = 0 if turn > 0 else 1
            lines.append(f'<path d="M {xy(a)} A {radius} {radius} 0 0 {sweep} {xy(b)}"/>')
        lines.append("</g>")
    if "chords" in style.layers:
        lines.append(f'<g id="chords" stroke="{style.chord_color}" stroke-width="{sw}">')
        for j in range(r):
            p, q = star[j], star[(j + 1) % r]
            (x1, y1), (x2, y2) = xy(p).split(), xy(q).split()
            lines.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')
        lines.append("</g>")
    if "polygon" in style.layers:
        body = " L ".join(xy(p) for p in rz.polygon_vertices)
        lines.append(
            f'<g id="polygon" fill="none" stroke="{style.polygon_color}" stroke-width="{sw}">'
            f'<path d="M {body} Z"/></g>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
