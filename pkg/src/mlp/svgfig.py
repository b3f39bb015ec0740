"""SVG picture of a face decomposition. The only module that touches floats."""

from __future__ import annotations

import math

from .arrangement import FaceComplex


def svg_figure(fc: FaceComplex, scale: float = 360.0, precision: int = 12) -> str:
    pad = 0.1
    y_bot = math.sqrt(3) / 2 - pad
    y_top = fc.ycap + pad
    x_min = -0.5 - pad

    def fmt(v: float) -> str:
        return format(v, f".{precision}g")

    def px(x: float) -> str:
        return fmt((x - x_min) * scale)

    def py(y: float) -> str:
        return fmt((y_top - y) * scale)

    width = px(0.5 + pad)
    height = py(y_bot)
    ch = math.sqrt(3) / 2  # corner height

    paths = []

    def path(d: str, color: str = "black") -> None:
        paths.append(f'<path d="{d}" fill="none" stroke="{color}" stroke-width="1.5"/>')

    # domain boundary: two walls, the cap, the unit-circle bottom
    path(f"M {px(-0.5)} {py(ch)} L {px(-0.5)} {py(fc.ycap)}")
    path(f"M {px(0.5)} {py(ch)} L {px(0.5)} {py(fc.ycap)}")
    path(f"M {px(-0.5)} {py(fc.ycap)} L {px(0.5)} {py(fc.ycap)}")
    r = fmt(scale)
    path(f"M {px(-0.5)} {py(ch)} A {r} {r} 0 0 1 {px(0.5)} {py(ch)}")

    # one path per clipped geodesic
    for arc in fc.arcs:
        rr = fmt(math.sqrt(fc.disc) / (2 * arc.a) * scale)
        x1, x2 = float(arc.lo), float(arc.hi)
        y1 = math.sqrt(float(arc.height_sq(arc.lo)))
        y2 = math.sqrt(float(arc.height_sq(arc.hi)))
        path(f"M {px(x1)} {py(y1)} A {rr} {rr} 0 0 1 {px(x2)} {py(y2)}", "crimson")
    for v in fc.vlines:
        x = float(v.x)
        foot = math.sqrt(1 - x * x)
        path(f"M {px(x)} {py(foot)} L {px(x)} {py(fc.ycap)}", "crimson")

    labels = []
    for face in fc.faces:
        lx = px(float(face.sample.x))
        ly = py(math.sqrt(float(face.sample.s)))
        labels.append(
            f'<text x="{lx}" y="{ly}" font-size="14" text-anchor="middle">{face.index}</text>'
        )

    body = "\n".join(paths + labels)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n{body}\n</svg>\n'
    )
