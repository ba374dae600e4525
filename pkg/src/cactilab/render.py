"""Deterministic SVG 1.1 pictures of disc configurations and cacti.

Geometry is exact up to this module; coordinates are rounded to six decimals
only when written out.
"""

from __future__ import annotations

import math
from collections import deque
from fractions import Fraction

from .cacti import Cactus, on_lobe, require_valid
from .framed_discs import FramedDiscConfig, validate
from .loop_algebra import lobe_adjacency

SIZE = 400
MARGIN = 20


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _header() -> list[str]:
    return ['<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">',
            f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>']


def render_discs(a: FramedDiscConfig) -> str:
    validate(a)
    half = SIZE / 2
    scale = half - MARGIN

    def xy(re, im):
        return half + scale * float(re), half - scale * float(im)

    out = _header()
    out.append(f'<circle cx="{_f(half)}" cy="{_f(half)}" r="{_f(scale)}" fill="none" '
               f'stroke="black" stroke-width="2"/>')
    for k, d in enumerate(a.discs, 1):
        cx, cy = xy(d.center.re, d.center.im)
        r = scale * float(d.radius)
        mx, my = xy(d.center.re + d.radius * d.frame.re, d.center.im + d.radius * d.frame.im)
        out.append(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" fill="#e8eef8" '
                   f'stroke="black" stroke-width="1"/>')
        out.append(f'<line x1="{_f(cx)}" y1="{_f(cy)}" x2="{_f(mx)}" y2="{_f(my)}" '
                   f'stroke="#c03030" stroke-width="1"/>')
        out.append(f'<circle cx="{_f(mx)}" cy="{_f(my)}" r="2.500000" fill="#c03030"/>')
        out.append(f'<text x="{_f(cx)}" y="{_f(cy)}" font-size="12" text-anchor="middle" '
                   f'dominant-baseline="middle">{k}</text>')
    gx, gy = xy(1, 0)
    out.append(f'<circle cx="{_f(gx)}" cy="{_f(gy)}" r="4.000000" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _support_length(c: Cactus, j: int) -> Fraction:
    return sum((b - a for label, a, b in c.label_runs if label == j), Fraction(0))


def cactus_layout(c: Cactus) -> dict[int, tuple[float, float, float, float]]:
    """Lobe j -> (center x, center y, radius, angle of parameter 0)."""
    if c.n == 0:
        return {}
    lc = c.lobe_coordinates
    mark = c(Fraction(0))
    root = next(i for i in range(1, c.n + 1) if on_lobe(c, i, mark))
    radius = {j: float(_support_length(c, j)) / (2 * math.pi) for j in range(1, c.n + 1)}
    adj = lobe_adjacency(c)
    # the global marked point sits at the bottom of the root lobe
    layout = {root: (0.0, 0.0, radius[root], -math.pi / 2 - 2 * math.pi * float(mark[root - 1]))}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        cx, cy, r, th = layout[i]
        fresh = [j for j in adj[i] if j not in layout]
        groups: dict[Fraction, list[int]] = {}
        for j in fresh:
            groups.setdefault(lc[j - 1][i - 1], []).append(j)
        for s in sorted(groups):
            kids = groups[s]
            base = th + 2 * math.pi * float(s)
            mx, my = cx + r * math.cos(base), cy + r * math.sin(base)
            for m, j in enumerate(kids):
                ang = base + (m - (len(kids) - 1) / 2) * 0.7
                rj = radius[j]
                jx, jy = mx + rj * math.cos(ang), my + rj * math.sin(ang)
                thj = ang + math.pi - 2 * math.pi * float(lc[i - 1][j - 1])
                layout[j] = (jx, jy, rj, thj)
                queue.append(j)
    return layout


def render_cactus(c: Cactus) -> str:
    require_valid(c)
    out = _header()
    layout = cactus_layout(c)
    if not layout:
        out.append(f'<circle cx="{_f(SIZE / 2)}" cy="{_f(SIZE / 2)}" r="4.000000" fill="black"/>')
        out.append("</svg>")
        return "\n".join(out) + "\n"
    xs = [v[0] - v[2] for v in layout.values()] + [v[0] + v[2] for v in layout.values()]
    ys = [v[1] - v[2] for v in layout.values()] + [v[1] + v[2] for v in layout.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (SIZE - 2 * MARGIN) / span
    ox = MARGIN + (SIZE - 2 * MARGIN - scale * (max(xs) - min(xs))) / 2 - scale * min(xs)
    oy = MARGIN + (SIZE - 2 * MARGIN - scale * (max(ys) - min(ys))) / 2 + scale * max(ys)

    def xy(x, y):
        return ox + scale * x, oy - scale * y

    for j in sorted(layout):
        cx, cy, r, th = layout[j]
        px, py = xy(cx, cy)
        out.append(f'<circle cx="{_f(px)}" cy="{_f(py)}" r="{_f(scale * r)}" fill="none" '
                   f'stroke="black" stroke-width="1.5"/>')
        mx, my = xy(cx + r * math.cos(th), cy + r * math.sin(th))
        out.append(f'<circle cx="{_f(mx)}" cy="{_f(my)}" r="2.500000" fill="#c03030"/>')
        out.append(f'<text x="{_f(px)}" y="{_f(py)}" font-size="12" text-anchor="middle" '
                   f'dominant-baseline="middle">{j}</text>')
    mark = c(Fraction(0))
    root = next(i for i in range(1, c.n + 1) if on_lobe(c, i, mark))
    cx, cy, r, th = layout[root]
    ang = th + 2 * math.pi * float(mark[root - 1])
    gx, gy = xy(cx + r * math.cos(ang), cy + r * math.sin(ang))
    out.append(f'<circle cx="{_f(gx)}" cy="{_f(gy)}" r="4.000000" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
