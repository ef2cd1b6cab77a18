"""Minimal hand-written SVG 1.1 output: polylines, markers and axis ticks."""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np


def _fmt(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


class Figure:
    def __init__(self, width: int = 480, height: int = 480, margin: int = 48):
        self.width, self.height, self.margin = width, height, margin
        self.items: list[str] = []
        self.xlim = (0.0, 1.0)
        self.ylim = (0.0, 1.0)
        self.xlog = False

    def set_limits(self, xlim, ylim, xlog: bool = False):
        self.xlim, self.ylim, self.xlog = tuple(map(float, xlim)), tuple(map(float, ylim)), xlog
        return self

    def _tx(self, x):
        x0, x1 = self.xlim
        if self.xlog:
            x, x0, x1 = np.log10(x), math.log10(x0), math.log10(x1)
        return self.margin + (np.asarray(x) - x0) / (x1 - x0) * (self.width - 2 * self.margin)

    def _ty(self, y):
        y0, y1 = self.ylim
        return self.height - self.margin - (np.asarray(y) - y0) / (y1 - y0) * (self.height - 2 * self.margin)

    def polyline(self, x, y, stroke="#1f4e9c", width=1.0):
        pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(self._tx(x), self._ty(y)))
        self.items.append(f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="{width}"/>')

    def markers(self, x, y, r=3.0, fill="#c0392b"):
        for a, b in zip(self._tx(x), self._ty(y)):
            self.items.append(f'<circle cx="{_fmt(a)}" cy="{_fmt(b)}" r="{r}" fill="{fill}"/>')

    def text(self, x, y, s, size=12, anchor="middle"):
        self.items.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" '
                          f'text-anchor="{anchor}" font-family="sans-serif">{escape(s)}</text>')

    def axes(self, xticks: Sequence[float], yticks: Sequence[float], xlabel="", ylabel="", title=""):
        m, w, h = self.margin, self.width, self.height
        self.items.append(f'<rect x="{m}" y="{m}" width="{w - 2 * m}" height="{h - 2 * m}" '
                          f'fill="none" stroke="#000" stroke-width="1"/>')
        for t in xticks:
            px = float(self._tx(t))
            self.items.append(f'<line x1="{_fmt(px)}" y1="{h - m}" x2="{_fmt(px)}" y2="{h - m + 5}" stroke="#000"/>')
            self.text(px, h - m + 18, f"{t:g}", size=10)
        for t in yticks:
            py = float(self._ty(t))
            self.items.append(f'<line x1="{m - 5}" y1="{_fmt(py)}" x2="{m}" y2="{_fmt(py)}" stroke="#000"/>')
            self.text(m - 8, py + 3, f"{t:g}", size=10, anchor="end")
        if xlabel:
            self.text(w / 2, h - 8, xlabel)
        if ylabel:
            self.items.append(f'<text x="14" y="{_fmt(h / 2)}" font-size="12" text-anchor="middle" '
                              f'font-family="sans-serif" transform="rotate(-90 14 {_fmt(h / 2)})">'
                              f'{escape(ylabel)}</text>')
        if title:
            self.text(w / 2, m - 14, title, size=13)

    def render(self) -> str:
        head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{self.width}" height="{self.height}" viewBox="0 0 {self.width} {self.height}">\n'
                f'<rect width="100%" height="100%" fill="#fff"/>\n')
        return head + "\n".join(self.items) + "\n</svg>\n"

    def save(self, path):
        with open(path, "w", newline="\n") as fh:
            fh.write(self.render())


def nodes_figure(m: int, n: int, curve_xy, nodes_xy, samples: int = 2000) -> Figure:
    fig = Figure().set_limits((-1.05, 1.05), (-1.05, 1.05))
    fig.axes([-1, -0.5, 0, 0.5, 1], [-1, -0.5, 0, 0.5, 1], "u", "v",
             f"Lissajous curve ({m}, {n}) and its {len(nodes_xy)} nodes")
    fig.polyline(curve_xy[:, 0], curve_xy[:, 1], width=0.7)
    fig.markers(nodes_xy[:, 0], nodes_xy[:, 1], r=2.5)
    return fig


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / count
    step = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 5, 10):
        if raw <= mult * step:
            step *= mult
            break
    start = math.ceil(lo / step) * step
    return [round(start + i * step, 12) for i in range(int((hi - start) / step + 1e-9) + 1)]


def sweep_figure(sizes, residuals, title: str) -> Figure:
    x = np.asarray(sizes, dtype=float)
    y = np.asarray(residuals, dtype=float)
    ylo, yhi = float(min(0.0, y.min())), float(max(0.0, y.max()))
    pad = 0.1 * (yhi - ylo or 1.0)
    xlo, xhi = float(x.min()) / 1.25, float(x.max()) * 1.25
    fig = Figure(560, 400, 56).set_limits((xlo, xhi), (ylo - pad, yhi + pad), xlog=True)
    xt = [2.0**k for k in range(math.ceil(math.log2(xlo)), math.floor(math.log2(xhi)) + 1)]
    fig.axes(xt, _nice_ticks(ylo - pad, yhi + pad), "n (log scale)", "residual", title)
    fig.polyline(x, y)
    fig.markers(x, y)
    return fig
