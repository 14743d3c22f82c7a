"""Minimal self-contained SVG log-log line plots."""

import math
from xml.sax.saxutils import escape

__all__ = ["loglog_svg"]

_COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _decades(lo, hi):
    return list(range(math.floor(lo), math.ceil(hi) + 1))


def loglog_svg(series, xlabel="", ylabel="", title="", width=480, height=360):
    """Render ``{label: (x, y)}`` as an SVG string on log10 axes.

    Non-positive or non-finite points are dropped. Axes get one tick per
    decade spanned by the data.
    """
    pts = {}
    for label, (xs, ys) in series.items():
        keep = [(math.log10(x), math.log10(y)) for x, y in zip(xs, ys)
                if x > 0 and y > 0 and math.isfinite(x) and math.isfinite(y)]
        if keep:
            pts[label] = keep
    allx = [p[0] for v in pts.values() for p in v] or [0.0, 1.0]
    ally = [p[1] for v in pts.values() for p in v] or [0.0, 1.0]
    x0, x1 = min(allx), max(allx)
    y0, y1 = min(ally), max(ally)
    if x1 - x0 < 1e-9:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-9:
        y0, y1 = y0 - 0.5, y1 + 0.5
    left, right, top, bottom = 64, 16, 28, 48
    pw, ph = width - left - right, height - top - bottom

    def sx(v):
        return left + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return top + (y1 - v) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    for d in _decades(x0, x1):
        if x0 - 1e-9 <= d <= x1 + 1e-9:
            X = sx(d)
            out.append(f'<line x1="{X:.2f}" y1="{top + ph}" x2="{X:.2f}" y2="{top + ph + 4}" stroke="black"/>')
            out.append(f'<text x="{X:.2f}" y="{top + ph + 16}" text-anchor="middle">1e{d}</text>')
    for d in _decades(y0, y1):
        if y0 - 1e-9 <= d <= y1 + 1e-9:
            Y = sy(d)
            out.append(f'<line x1="{left - 4}" y1="{Y:.2f}" x2="{left}" y2="{Y:.2f}" stroke="black"/>')
            out.append(f'<text x="{left - 6}" y="{Y + 4:.2f}" text-anchor="end">1e{d}</text>')
    for n, (label, p) in enumerate(pts.items()):
        colour = _COLOURS[n % len(_COLOURS)]
        coords = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in p)
        out.append(f'<polyline points="{coords}" fill="none" stroke="{colour}" stroke-width="1.5"/>')
        out.append(f'<text x="{left + 8}" y="{top + 14 + 14 * n}" fill="{colour}">{escape(str(label))}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 8}" text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="14" y="{top + ph / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 14 {top + ph / 2:.2f})">{escape(ylabel)}</text>')
    if title:
        out.append(f'<text x="{width / 2}" y="16" text-anchor="middle">{escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
