"""Minimal polyline SVG plots and gnuplot-style data files."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
WIDTH, HEIGHT = 640, 420
MARGIN = dict(left=70, right=20, top=30, bottom=50)


def _ticks(lo: float, hi: float, count: int = 5) -> np.ndarray:
    return np.linspace(lo, hi, count)


def line_plot(x, series: dict, title: str = "", xlabel: str = "", ylabel: str = "",
              logy: bool = False) -> str:
    """SVG document with one polyline per entry of ``series`` (label -> y values)."""
    x = np.asarray(x, dtype=float)
    ys = {k: np.asarray(v, dtype=float) for k, v in series.items()}
    if logy:
        ys = {k: np.log10(np.maximum(v, 1e-300)) for k, v in ys.items()}
    allv = np.concatenate([v for v in ys.values()]) if ys else np.zeros(1)
    x0, x1 = float(np.min(x)), float(np.max(x))
    y0, y1 = float(np.min(allv)), float(np.max(allv))
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(v):
        return MARGIN["left"] + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return MARGIN["top"] + (1.0 - (v - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle">{escape(title)}</text>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{sx(t):.1f}" y="{HEIGHT - 30}" text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        lab = f"1e{t:.2g}" if logy else f"{t:.6g}"
        out.append(f'<text x="{MARGIN["left"] - 6}" y="{sy(t) + 4:.1f}" text-anchor="end">{lab}</text>')
    out.append(f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT - 8}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(
        f'<text x="14" y="{HEIGHT / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {HEIGHT / 2:.1f})">{escape(ylabel)}</text>'
    )
    for i, (label, y) in enumerate(ys.items()):
        c = COLORS[i % len(COLORS)]
        pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{c}" stroke-width="1.5"/>')
        ly = MARGIN["top"] + 16 + 16 * i
        lx = MARGIN["left"] + 10
        out.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 20}" y2="{ly - 4}" stroke="{c}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def dat_table(x, series: dict, xname: str = "x") -> str:
    """Whitespace-separated columns with a ``#`` header, readable by gnuplot."""
    cols = [np.asarray(x, dtype=float)] + [np.asarray(v, dtype=float) for v in series.values()]
    lines = ["# " + " ".join([xname] + [k.replace(" ", "_") for k in series])]
    for row in zip(*cols):
        lines.append(" ".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"
