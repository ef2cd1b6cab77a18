"""Supremum search on a rectangle: tensor grid, then local grid refinement.

Objectives are evaluated on tensor grids (``f(xs, ys) -> array[len(xs), len(ys)]``)
so each step is a single vectorized call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class DegenerateSearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    """Grid-search settings.

    ``grid_points_per_axis=None`` lets each caller pick its default
    (``8 max(m, n) + 1`` for the interpolation constant, ``4 max(m, n)``
    over a periodicity cell for the discrete constants).
    """

    grid_points_per_axis: int | None = None
    refinement_rounds: int = 2
    refinement_factor: int = 8
    candidates: int = 8

    def validate(self, m: int, n: int) -> "SearchSpec":
        g = self.grid_points_per_axis
        if g is not None and g < 4 * max(m, n):
            raise DegenerateSearchError(
                f"grid_points_per_axis={g} is below 4*max(m, n)={4 * max(m, n)}"
            )
        if self.refinement_rounds < 0:
            raise DegenerateSearchError("refinement_rounds must be >= 0")
        if self.refinement_factor < 2:
            raise DegenerateSearchError("refinement_factor must be >= 2")
        if self.candidates < 1:
            raise DegenerateSearchError("candidates must be >= 1")
        return self

    def points(self, default: int) -> int:
        return default if self.grid_points_per_axis is None else self.grid_points_per_axis


@dataclass(frozen=True)
class SearchResult:
    value: float
    x: float
    y: float
    coarse_value: float


def _spacing(axis: np.ndarray, i: int) -> float:
    gaps = []
    if i > 0:
        gaps.append(axis[i] - axis[i - 1])
    if i + 1 < len(axis):
        gaps.append(axis[i + 1] - axis[i])
    return max(gaps) if gaps else 0.0


def grid_maximize(func, xs, ys, bounds, spec: SearchSpec) -> SearchResult:
    """Maximize ``func`` over the tensor grid ``xs x ys`` and refine around the best points.

    ``bounds = ((x0, x1), (y0, y1))`` clips the refinement windows. Each round
    shrinks the window around the running best point by ``refinement_factor``;
    the current best is always re-sampled, so the value never decreases.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    (x0, x1), (y0, y1) = bounds
    vals = np.asarray(func(xs, ys))
    coarse = float(vals.max())

    flat = np.argsort(vals, axis=None, kind="stable")[::-1][: spec.candidates]
    best = (coarse, float(xs[np.unravel_index(flat[0], vals.shape)[0]]),
            float(ys[np.unravel_index(flat[0], vals.shape)[1]]))
    q = spec.refinement_factor
    for idx in flat:
        i, j = np.unravel_index(idx, vals.shape)
        bx, by, bv = float(xs[i]), float(ys[j]), float(vals[i, j])
        hx, hy = _spacing(xs, i), _spacing(ys, j)
        for _ in range(spec.refinement_rounds):
            lx = np.unique(np.clip(np.linspace(bx - hx, bx + hx, 2 * q + 1), x0, x1))
            ly = np.unique(np.clip(np.linspace(by - hy, by + hy, 2 * q + 1), y0, y1))
            local = np.asarray(func(lx, ly))
            a, b = np.unravel_index(np.argmax(local), local.shape)
            if local[a, b] > bv:
                bx, by, bv = float(lx[a]), float(ly[b]), float(local[a, b])
            hx, hy = hx / q, hy / q
        if bv > best[0]:
            best = (bv, bx, by)
    return SearchResult(best[0], best[1], best[2], coarse)


def aligned_axis(lo: float, hi: float, count: int, step: float | None = None) -> np.ndarray:
    """``count`` uniform points on [lo, hi], merged with the multiples of ``step`` inside it."""
    axis = np.linspace(lo, hi, count)
    if step is not None:
        k0 = int(np.ceil(lo / step - 1e-12))
        k1 = int(np.floor(hi / step + 1e-12))
        extra = step * np.arange(k0, k1 + 1)
        axis = np.concatenate([axis, extra[(extra >= lo) & (extra <= hi)]])
    axis = np.sort(axis)
    keep = np.concatenate([[True], np.diff(axis) > 1e-13])
    return axis[keep]
