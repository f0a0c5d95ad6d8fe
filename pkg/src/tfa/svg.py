"""Minimal line-plot writer producing standalone SVG documents."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

PALETTE = ("#d62728", "#2ca02c", "#1f77b4", "#ff7f0e", "#9467bd", "#8c564b")


@dataclass(frozen=True)
class Series:
    label: str
    x: Sequence[float]
    y: Sequence[float]
    color: str | None = None


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, log: bool, count: int = 5) -> list[float]:
    if log:
        a, b = math.floor(lo), math.ceil(hi)
        step = max(1, (b - a) // count)
        return [float(e) for e in range(a, b + 1, step) if lo <= e <= hi] or [lo, hi]
    if hi == lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-12 * abs(step):
        out.append(v)
        v += step
    return out


def _tick_label(v: float, log: bool) -> str:
    if log:
        return f"1e{int(round(v))}"
    return f"{v:.6g}"


def line_plot(series: Sequence[Series], *, title: str = "", xlabel: str = "",
              ylabel: str = "", xlog: bool = False, ylog: bool = False,
              hlines: Sequence[tuple[float, str]] = (), width: int = 720,
              height: int = 480) -> str:
    """SVG text of a polyline chart.

    Non-finite points are skipped, as are nonpositive ones on log axes.
    """
    ml, mr, mt, mb = 80, 160, 40, 60
    pw, ph = width - ml - mr, height - mt - mb

    def tx(v):
        return math.log10(v) if xlog else v

    def ty(v):
        return math.log10(v) if ylog else v

    def ok(x, y):
        return (math.isfinite(x) and math.isfinite(y)
                and (not xlog or x > 0) and (not ylog or y > 0))

    pts = [[(tx(x), ty(y)) for x, y in zip(s.x, s.y) if ok(x, y)] for s in series]
    hl = [(ty(v), lab) for v, lab in hlines if ok(1.0, v)]
    xs = [p[0] for ps in pts for p in ps]
    ys = [p[1] for ps in pts for p in ps] + [v for v, _ in hl]
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def px(v):
        return ml + (v - x0) / (x1 - x0) * pw

    def py(v):
        return mt + ph - (v - y0) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
           f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
           f'<rect x="{ml}" y="{mt}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    for v in _ticks(x0, x1, xlog):
        X = _fmt(px(v))
        out.append(f'<line x1="{X}" y1="{mt + ph}" x2="{X}" y2="{mt + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{X}" y="{mt + ph + 18}" text-anchor="middle">'
                   f'{escape(_tick_label(v, xlog))}</text>')
    for v in _ticks(y0, y1, ylog):
        Y = _fmt(py(v))
        out.append(f'<line x1="{ml - 5}" y1="{Y}" x2="{ml}" y2="{Y}" stroke="black"/>')
        out.append(f'<text x="{ml - 8}" y="{Y}" text-anchor="end" dominant-baseline="middle">'
                   f'{escape(_tick_label(v, ylog))}</text>')
    for i, (s, ps) in enumerate(zip(series, pts)):
        color = s.color or PALETTE[i % len(PALETTE)]
        if ps:
            coords = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in ps)
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                       f'points="{coords}"/>')
        ly = mt + 15 + 18 * i
        out.append(f'<line x1="{ml + pw + 10}" y1="{ly}" x2="{ml + pw + 30}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{ml + pw + 35}" y="{ly}" dominant-baseline="middle">'
                   f'{escape(s.label)}</text>')
    for v, lab in hl:
        Y = _fmt(py(v))
        out.append(f'<line x1="{ml}" y1="{Y}" x2="{ml + pw}" y2="{Y}" stroke="gray" '
                   f'stroke-dasharray="4 3"/>')
        out.append(f'<text x="{ml + pw - 4}" y="{_fmt(py(v) - 4)}" text-anchor="end" '
                   f'fill="gray">{escape(lab)}</text>')
    if title:
        out.append(f'<text x="{width / 2}" y="22" text-anchor="middle" font-size="14">'
                   f'{escape(title)}</text>')
    if xlabel:
        out.append(f'<text x="{ml + pw / 2}" y="{height - 15}" text-anchor="middle">'
                   f'{escape(xlabel)}</text>')
    if ylabel:
        out.append(f'<text x="18" y="{mt + ph / 2}" text-anchor="middle" '
                   f'transform="rotate(-90 18 {mt + ph / 2})">{escape(ylabel)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
