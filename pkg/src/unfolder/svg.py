"""Dependency-free SVG rendering of bifurcation diagrams.

Stable segments are drawn solid, unstable segments dashed; folds are
filled circles and crossings open squares.  Coordinates are rounded to
1e-6 so repeated runs produce byte-identical, diffable files.
"""

from __future__ import annotations

from .continuation import Branch, Window

WIDTH, HEIGHT = 640.0, 480.0
MARGIN = 60.0


def _fmt(v: float) -> str:
    return f"{v:.6f}"


class _Mapper:
    def __init__(self, window: Window):
        self.w = window

    def px(self, lam: float) -> float:
        frac = (lam - self.w.lam_min) / (self.w.lam_max - self.w.lam_min)
        return MARGIN + frac * (WIDTH - 2 * MARGIN)

    def py(self, x: float) -> float:
        frac = (x - self.w.x_min) / (self.w.x_max - self.w.x_min)
        return HEIGHT - MARGIN - frac * (HEIGHT - 2 * MARGIN)


def _polyline(points, mapper: _Mapper, dashed: bool) -> str:
    coords = " ".join(f"{_fmt(mapper.px(p.lam))},{_fmt(mapper.py(p.x))}" for p in points)
    dash = ' stroke-dasharray="6,4"' if dashed else ""
    return f'<polyline fill="none" stroke="black" stroke-width="1.5"{dash} points="{coords}"/>'


def render_diagram(
    branches: list[Branch],
    window: Window,
    state_name: str = "x",
    control_name: str = "lambda",
) -> str:
    """Render a traced diagram as a standalone SVG document."""
    m = _Mapper(window)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" height="{HEIGHT:.0f}" '
        f'viewBox="0 0 {WIDTH:.0f} {HEIGHT:.0f}">',
        f'<rect width="{WIDTH:.0f}" height="{HEIGHT:.0f}" fill="white"/>',
        # axes
        f'<line x1="{_fmt(MARGIN)}" y1="{_fmt(HEIGHT - MARGIN)}" x2="{_fmt(WIDTH - MARGIN)}" '
        f'y2="{_fmt(HEIGHT - MARGIN)}" stroke="gray"/>',
        f'<line x1="{_fmt(MARGIN)}" y1="{_fmt(MARGIN)}" x2="{_fmt(MARGIN)}" '
        f'y2="{_fmt(HEIGHT - MARGIN)}" stroke="gray"/>',
        f'<text x="{_fmt(WIDTH / 2)}" y="{_fmt(HEIGHT - 15)}" text-anchor="middle" '
        f'font-size="14">{control_name}</text>',
        f'<text x="18" y="{_fmt(HEIGHT / 2)}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 18 {_fmt(HEIGHT / 2)})">{state_name}</text>',
        f'<text x="{_fmt(MARGIN)}" y="{_fmt(HEIGHT - MARGIN + 18)}" font-size="10" '
        f'text-anchor="middle">{window.lam_min:g}</text>',
        f'<text x="{_fmt(WIDTH - MARGIN)}" y="{_fmt(HEIGHT - MARGIN + 18)}" font-size="10" '
        f'text-anchor="middle">{window.lam_max:g}</text>',
        f'<text x="{_fmt(MARGIN - 8)}" y="{_fmt(HEIGHT - MARGIN)}" font-size="10" '
        f'text-anchor="end">{window.x_min:g}</text>',
        f'<text x="{_fmt(MARGIN - 8)}" y="{_fmt(MARGIN + 4)}" font-size="10" '
        f'text-anchor="end">{window.x_max:g}</text>',
    ]

    for br in branches:
        # split the polyline into maximal runs of equal stability
        run: list = []
        run_stab = None
        for pt in br.points:
            if run_stab is None or pt.stability == run_stab:
                run.append(pt)
                run_stab = pt.stability
            else:
                run.append(pt)  # share the boundary point with both runs
                if len(run) >= 2:
                    parts.append(_polyline(run, m, dashed=(run_stab == "unstable")))
                run = [pt]
                run_stab = pt.stability
        if len(run) >= 2:
            parts.append(_polyline(run, m, dashed=(run_stab == "unstable")))

    for br in branches:
        for s in br.special_points:
            cx, cy = _fmt(m.px(s.lam)), _fmt(m.py(s.x))
            if s.kind == "fold":
                parts.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="black"/>')
            else:
                parts.append(
                    f'<rect x="{_fmt(m.px(s.lam) - 4)}" y="{_fmt(m.py(s.x) - 4)}" width="8" '
                    f'height="8" fill="white" stroke="black"/>'
                )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
