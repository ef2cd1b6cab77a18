"""L1 norms of kernels and the discrete Lebesgue constants.

Integrals use composite Gauss-Legendre quadrature on cells of width
``pi / (cells_per_oscillation * frequency)``: |kernel| has kinks at its zero
crossings, so fixed fine cells converge predictably where adaptive rules stall.
Partial sums over row blocks are combined with :func:`math.fsum`, which keeps
the reduction order fixed and the result reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import kernels as K
from .search import SearchResult, SearchSpec, grid_maximize


class UndefinedRatioError(ValueError):
    pass


class PeriodicityError(AssertionError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    cells_per_oscillation: int = 8
    gauss_order: int = 4

    def __post_init__(self):
        if self.cells_per_oscillation < 1 or self.gauss_order < 1:
            raise ValueError("cells_per_oscillation and gauss_order must be positive")

    def refined(self) -> "QuadratureSpec":
        return replace(self, cells_per_oscillation=2 * self.cells_per_oscillation)


@dataclass(frozen=True)
class NormReport:
    kernel: str
    m: int
    n: int
    value: float
    cells_per_oscillation: int
    gauss_order: int
    convergence_delta: float  # relative change when the cell count is doubled

    HEADER = ("kernel", "m", "n", "value", "cells_per_oscillation", "gauss_order",
              "convergence_delta")

    def row(self) -> list[str]:
        return [self.kernel, str(self.m), str(self.n), f"{self.value:.17g}",
                str(self.cells_per_oscillation), str(self.gauss_order),
                f"{self.convergence_delta:.17g}"]


def gauss_legendre_axis(lo: float, hi: float, frequency: float, quad: QuadratureSpec):
    """Nodes and weights of the composite rule on [lo, hi] for a given oscillation frequency."""
    cells = max(1, math.ceil(round(quad.cells_per_oscillation * max(frequency, 1) * (hi - lo) / np.pi, 9)))
    t, w = np.polynomial.legendre.leggauss(quad.gauss_order)
    edges = np.linspace(lo, hi, cells + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def on_grid(func):
    """Lift an elementwise kernel ``f(x, y)`` to a tensor-grid kernel."""
    def grid(xs, ys):
        return func(np.asarray(xs)[:, None], np.asarray(ys)[None, :])
    return grid


def l1_norm_1d(func, frequency: float, quad: QuadratureSpec = QuadratureSpec(),
               domain=(-np.pi, np.pi)) -> float:
    x, w = gauss_legendre_axis(domain[0], domain[1], frequency, quad)
    return math.fsum(w * np.abs(func(x)))


def l1_norm_2d(kernel_grid, x_frequency: float, y_frequency: float,
               quad: QuadratureSpec = QuadratureSpec(),
               domain=((0.0, np.pi), (0.0, np.pi)), block: int = 512) -> float:
    """``int int |kernel|`` over a rectangle.

    ``kernel_grid(xs, ys)`` must return the kernel on the tensor grid
    ``xs x ys``; use :func:`on_grid` for elementwise kernels.
    """
    xs, wx = gauss_legendre_axis(*domain[0], x_frequency, quad)
    ys, wy = gauss_legendre_axis(*domain[1], y_frequency, quad)
    parts = []
    for s in range(0, len(xs), block):
        vals = np.abs(kernel_grid(xs[s:s + block], ys))
        parts.append(float(wx[s:s + block] @ (vals @ wy)))
    return math.fsum(parts)


def _report(name, m, n, compute, quad: QuadratureSpec) -> NormReport:
    value = compute(quad)
    fine = compute(quad.refined())
    delta = abs(fine - value) / abs(fine) if fine else abs(fine - value)
    return NormReport(name, m, n, value, quad.cells_per_oscillation, quad.gauss_order, delta)


def lebesgue_continuous(m: int, n: int, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Lebesgue constant of the rhombus partial sums, ``(1/pi^2) int_[0,pi)^2 |D_mn|``.

    D_mn is even in each variable, so the torus integral is four times the
    integral over the positive quadrant.
    """
    grid = lambda xs, ys: K.dirichlet_rhombus_grid(m, n, xs, ys)
    return l1_norm_2d(grid, m, n, quad) / np.pi**2


def lebesgue_continuous_report(m: int, n: int, quad: QuadratureSpec = QuadratureSpec()) -> NormReport:
    return _report("continuous", m, n, lambda q: lebesgue_continuous(m, n, q), quad)


def delta1_norm(m: int, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """``int_[0,pi)^2 |S_mm / 2|``."""
    return l1_norm_2d(on_grid(lambda x, y: K.delta_kernels(m, x, y)[0]), m, m, quad)


def delta2_norm(m: int, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """``int_[0,pi)^2 |D_m(x - y) sin(m(x + y)/2)|``."""
    return l1_norm_2d(on_grid(lambda x, y: K.delta_kernels(m, x, y)[1]), m, m, quad)


def f_norm(m: int, n: int, quad: QuadratureSpec = QuadratureSpec(),
           variant: str = K.DEFAULT_F_VARIANT) -> float:
    """``||F_mn||_{L(T^2)}``; F is even in each variable so this is 4x the quadrant integral."""
    grid = lambda xs, ys: K.f_kernel_grid(m, n, xs, ys, variant)
    yfreq = 2 * n if variant == "plus" else n
    return 4.0 * l1_norm_2d(grid, m, yfreq, quad)


def script_f_norm(m: int, p: int, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """``||sum_{k=0}^m {-pk/m} e^{ikx}||_{L(T)}``."""
    return l1_norm_1d(lambda x: K.script_f(m, p, x), m, quad)


def onesided_dirichlet_norm(m: int, quad: QuadratureSpec = QuadratureSpec()) -> float:
    return l1_norm_1d(lambda x: K.dirichlet_onesided(m, x), m, quad)


# -- discrete partial sums ---------------------------------------------------

def _shift_axes(m: int, n: int, xs, ys):
    mu = np.arange(-m, m) * np.pi / m
    nu = np.arange(-n, n) * np.pi / n
    return (np.subtract.outer(np.atleast_1d(xs), mu).ravel(),
            np.subtract.outer(np.atleast_1d(ys), nu).ravel())


def discrete_lebesgue_grid(m: int, n: int, xs, ys, block: int = 32) -> np.ndarray:
    """Discrete Lebesgue function on the tensor grid ``xs x ys``.

    All ``4mn`` shifted kernel values are themselves a tensor grid, so the
    whole block is one matrix product followed by an |.|-sum over the shifts.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    _, yall = _shift_axes(m, n, xs[:1], ys)
    out = np.empty((len(xs), len(ys)))
    for s in range(0, len(xs), block):
        xb = xs[s:s + block]
        xall, _ = _shift_axes(m, n, xb, xs[:1])
        vals = np.abs(K.dirichlet_rhombus_grid(m, n, xall, yall))
        out[s:s + block] = vals.reshape(len(xb), 2 * m, len(ys), 2 * n).sum(axis=(1, 3))
    return out / (4 * m * n)


def lebesgue_function_discrete(m: int, n: int, x, y):
    """``(1/4mn) sum_{mu, nu} |D_mn(x - pi mu/m, y - pi nu/n)|`` at matching points."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.array([discrete_lebesgue_grid(m, n, a, b)[0, 0] for a, b in zip(x.ravel(), y.ravel())])
    return float(out[0]) if x.ndim == 0 else out.reshape(x.shape)


def check_periodicity(m: int, n: int, samples: int = 8, tol: float = 1e-9, seed: int = 0) -> float:
    """Largest relative defect of ``L(x + pi/m, y) = L(x, y) = L(x, y + pi/n)``.

    Raises :class:`PeriodicityError` above ``tol``.
    """
    rng = np.random.default_rng(seed)
    x = rng.uniform(-np.pi, np.pi, samples)
    y = rng.uniform(-np.pi, np.pi, samples)
    base = lebesgue_function_discrete(m, n, x, y)
    sx = lebesgue_function_discrete(m, n, x + np.pi / m, y)
    sy = lebesgue_function_discrete(m, n, x, y + np.pi / n)
    defect = float(max(np.max(np.abs(sx - base) / base), np.max(np.abs(sy - base) / base)))
    if defect > tol:
        raise PeriodicityError(f"discrete Lebesgue function not periodic: defect {defect:.3g}")
    return defect


def lebesgue_constant_discrete(m: int, n: int, search: SearchSpec = SearchSpec()) -> SearchResult:
    """Supremum of the discrete Lebesgue function.

    L is periodic with periods pi/m and pi/n (checked at runtime), so only the
    cell [0, pi/m] x [0, pi/n] is searched.
    """
    search.validate(m, n)
    check_periodicity(m, n)
    g = search.points(4 * max(m, n))
    xs = np.linspace(0.0, np.pi / m, g)
    ys = np.linspace(0.0, np.pi / n, g)
    func = lambda a, b: discrete_lebesgue_grid(m, n, a, b)
    return grid_maximize(func, xs, ys, ((0.0, np.pi / m), (0.0, np.pi / n)), search)


def _window_sums(vals: np.ndarray, axis: int, width: int) -> np.ndarray:
    """Circular sums of ``width`` consecutive entries along ``axis``."""
    c = np.cumsum(np.concatenate([vals, vals], axis=axis), axis=axis)
    c = np.concatenate([np.zeros_like(np.take(c, [0], axis=axis)), c], axis=axis)
    size = vals.shape[axis]
    hi = np.take(c, np.arange(width, width + size), axis=axis)
    lo = np.take(c, np.arange(size), axis=axis)
    return hi - lo


def f_grid_average(m: int, n: int, xs, ys, variant: str = K.DEFAULT_F_VARIANT) -> np.ndarray:
    """Best translate of the grid average of |F_mn| for each cell offset ``(x, y)``.

    F is 2 pi-periodic in x, so for an offset ``x`` in [0, pi/m) the points
    ``x + pi j/m``, j < 2m, carry every x-translate and each m-point average is
    a circular window sum. F is not periodic in y (its y-frequencies are not
    integers), so the base point ``y + pi j/n`` ranges over j in [-n, n), which
    covers [-pi, pi), and the n-point windows are taken without wrap-around.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    xall = np.add.outer(xs, np.arange(2 * m) * np.pi / m).ravel()
    yall = np.add.outer(ys, np.arange(-n, 3 * n) * np.pi / n).ravel()
    vals = np.abs(K.f_kernel_grid(m, n, xall, yall, variant)).reshape(len(xs), 2 * m, len(ys), 4 * n)
    sums = _window_sums(vals, 1, m)
    c = np.concatenate([np.zeros_like(sums[..., :1]), np.cumsum(sums, axis=3)], axis=3)
    sums = c[..., n:3 * n] - c[..., :2 * n]
    return sums.max(axis=(1, 3)) / (m * n)


def frak_f(m: int, n: int, search: SearchSpec = SearchSpec(),
           variant: str = K.DEFAULT_F_VARIANT) -> SearchResult:
    """``sup_{(x,y)} (1/mn) sum_{mu<m, nu<n} |F_mn(x + pi mu/m, y + pi nu/n)|``."""
    search.validate(m, n)
    if m == 1 or n % m == 0:
        return SearchResult(0.0, 0.0, 0.0, 0.0)
    g = search.points(4 * max(m, n))
    xs = np.linspace(0.0, np.pi / m, g, endpoint=False)
    ys = np.linspace(0.0, np.pi / n, g, endpoint=False)
    func = lambda a, b: f_grid_average(m, n, a, b, variant)
    return grid_maximize(func, xs, ys, ((0.0, np.pi / m), (0.0, np.pi / n)), search)


# -- Marcinkiewicz-Zygmund -------------------------------------------------------

def trig_poly(cos_coeffs, sin_coeffs):
    """``T(x) = a_0 + sum_j (a_j cos jx + b_j sin jx)``; ``b_0`` is ignored."""
    a = np.asarray(cos_coeffs, dtype=float)
    b = np.asarray(sin_coeffs, dtype=float)
    size = max(len(a), len(b))
    a = np.pad(a, (0, size - len(a)))
    b = np.pad(b, (0, size - len(b)))
    j = np.arange(size)

    def T(x):
        x = np.asarray(x, dtype=float)
        return np.cos(np.multiply.outer(x, j)) @ a + np.sin(np.multiply.outer(x, j)) @ b
    return T


def mz_ratio(cos_coeffs, sin_coeffs, n: int, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """``((1/n) sum_{nu<n} |T(pi nu/n)|) / ||T||_{L(T)}`` for a polynomial of degree <= n."""
    a = np.asarray(cos_coeffs, dtype=float)
    b = np.asarray(sin_coeffs, dtype=float)
    if len(a) > n + 1 or len(b) > n + 1:
        raise ValueError(f"polynomial degree exceeds n={n}")
    if not np.any(a) and not np.any(b[1:]):
        raise UndefinedRatioError("ratio undefined for the zero polynomial")
    T = trig_poly(a, b)
    sample = math.fsum(np.abs(T(np.pi * np.arange(n) / n))) / n
    return sample / l1_norm_1d(T, n, quad)
