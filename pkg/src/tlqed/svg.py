"""Self-contained SVG heatmaps for two-axis sweep grids.

One rect per cell, colors linearly interpolated over a fixed 8-stop
gradient (dark blue through cyan, yellow, and red) mapped onto
[min, max] of the unmasked values; masked cells are gray. Output bytes
depend only on the grid contents: floats are printed with a fixed format
and no timestamps or random ids are embedded.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .sweep import SweepGrid

# 8 anchor colors, evenly spaced over the normalized value range
GRADIENT = (
    (13, 8, 135), (84, 2, 163), (139, 10, 165), (185, 50, 137),
    (219, 92, 104), (244, 136, 73), (254, 188, 43), (240, 249, 33),
)
MASK_COLOR = "#808080"

CELL = 8            # px per grid cell
MARGIN_L = 64
MARGIN_B = 46
MARGIN_T = 24
BAR_W = 18
BAR_GAP = 26
MARGIN_R = BAR_GAP + BAR_W + 70


def color_at(t: float) -> str:
    """Hex color at normalized position t in [0, 1]."""
    t = min(1.0, max(0.0, t))
    pos = t * (len(GRADIENT) - 1)
    i = min(int(pos), len(GRADIENT) - 2)
    frac = pos - i
    rgb = tuple(round(a + (b - a) * frac)
                for a, b in zip(GRADIENT[i], GRADIENT[i + 1]))
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def write_svg_heatmap(grid: SweepGrid, path: str | Path) -> None:
    """Render a two-axis grid; other arities are unsupported."""
    if len(grid.axes) != 2:
        raise ValueError("SVG heatmaps need exactly a two-axis grid")
    ny, nx = grid.shape  # axis 0 rows (outer), axis 1 columns (inner)
    values = grid.values.reshape(ny, nx)
    masked = np.array([code != "" for code in grid.error_mask]).reshape(ny, nx)
    finite = values[~masked]
    finite = finite[np.isfinite(finite)]
    vmin = float(finite.min()) if finite.size else 0.0
    vmax = float(finite.max()) if finite.size else 0.0
    span = vmax - vmin

    width = MARGIN_L + nx * CELL + MARGIN_R
    height = MARGIN_T + ny * CELL + MARGIN_B
    out = []
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
               f'height="{height}" viewBox="0 0 {width} {height}">')
    out.append(f'<rect width="{width}" height="{height}" fill="#ffffff"/>')

    for iy in range(ny):
        # first row of the grid drawn at the bottom (axis value increases up)
        y = MARGIN_T + (ny - 1 - iy) * CELL
        for ix in range(nx):
            x = MARGIN_L + ix * CELL
            if masked[iy, ix] or not np.isfinite(values[iy, ix]):
                fill = MASK_COLOR
            elif span == 0.0:
                fill = color_at(0.5)
            else:
                fill = color_at((values[iy, ix] - vmin) / span)
            out.append(f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" '
                       f'fill="{fill}"/>')

    ax0, ax1 = grid.axes
    out.append(_text(MARGIN_L + nx * CELL / 2, height - 10,
                     f"{ax1.name} [{_fmt(ax1.start)} .. {_fmt(ax1.stop)}]",
                     anchor="middle"))
    out.append(_text(16, MARGIN_T + ny * CELL / 2,
                     f"{ax0.name} [{_fmt(ax0.start)} .. {_fmt(ax0.stop)}]",
                     anchor="middle",
                     extra=f' transform="rotate(-90 16 {MARGIN_T + ny * CELL / 2})"'))
    out.append(_text(MARGIN_L + nx * CELL / 2, 16,
                     f"{grid.observable} ({grid.unit})", anchor="middle"))

    # numeric color bar
    bar_x = MARGIN_L + nx * CELL + BAR_GAP
    bar_h = ny * CELL
    steps = 32
    for k in range(steps):
        t0 = k / steps
        y = MARGIN_T + bar_h * (1 - (k + 1) / steps)
        out.append(f'<rect x="{bar_x}" y="{_fmt(y)}" width="{BAR_W}" '
                   f'height="{_fmt(bar_h / steps + 0.5)}" fill="{color_at(t0 + 0.5 / steps)}"/>')
    out.append(_text(bar_x + BAR_W + 4, MARGIN_T + 10, _fmt(vmax)))
    out.append(_text(bar_x + BAR_W + 4, MARGIN_T + bar_h, _fmt(vmin)))
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n")


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _text(x, y, s, anchor="start", extra=""):
    return (f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="monospace" '
            f'font-size="11" text-anchor="{anchor}"{extra}>{s}</text>')
