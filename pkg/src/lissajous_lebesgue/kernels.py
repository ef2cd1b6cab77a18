"""Trigonometric kernels attached to the rhombus partial sums.

Every kernel is vectorized: ``x`` and ``y`` may be scalars or arrays that
broadcast against each other. Removable singularities (the zeros of
``sin(x/2)`` in the Dirichlet ratio and ``y = 0`` in ``S_mn``) are handled
explicitly so that the returned values are finite everywhere.

Fractional parts follow the floor convention, ``{x} = x - floor(x)`` in
[0, 1), and are computed in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi
# switch to the limit branch of D_m when |sin(h/2)| drops below this
POLE_EPS = 1e-9

F_VARIANTS = ("minus", "plus")
# the variant for which D = S - F + R holds numerically (checked in the test suite)
DEFAULT_F_VARIANT = "minus"


class SingularPointError(ValueError):
    pass


@dataclass(frozen=True)
class KernelValue:
    value: float
    singularity_handled: bool = False


@dataclass(frozen=True)
class TruncationSpec:
    """Cutoff ``V`` for the ``nu``-series of ``R_mn``.

    Each discarded pair of terms is bounded by ``(2m+1)|y| / (pi nu (2 pi nu))``,
    so the whole tail is at most ``(2m+1)|y| / (pi^2 V)``.
    """

    V: int = 2000

    def __post_init__(self):
        if int(self.V) != self.V or self.V < 1:
            raise ValueError(f"truncation V must be a positive integer, got {self.V!r}")

    def tail_bound(self, m: int, y):
        return (2 * m + 1) * np.abs(y) / (np.pi**2 * self.V)


def frac_neg(num: int, m: int) -> float:
    """``{-num/m}`` computed exactly."""
    return ((-num) % m) / m


def frac_weights(m: int, n: int) -> np.ndarray:
    """``{-n k / m}`` for k = 0..m (entry 0 is always 0)."""
    k = np.arange(m + 1)
    return ((-n * k) % m) / m


def _reduce(x):
    """Split ``x = h + 2 pi j`` with ``|h| <= pi``."""
    x = np.asarray(x, dtype=float)
    j = np.rint(x / TWO_PI)
    return x - TWO_PI * j, j


def _near_pole(x) -> np.ndarray:
    h, _ = _reduce(x)
    return np.abs(np.sin(0.5 * h)) < POLE_EPS


def dirichlet_ratio(m: int, x):
    """``D_m(x) = sin(m x / 2) / sin(x / 2)`` with its removable singularities filled in.

    At ``x = 2 pi j`` the limit is ``m (-1)^((m-1) j)``; near it a second-order
    Taylor expansion is used (the first-order term vanishes since D_m is even).
    """
    h, j = _reduce(x)
    sign = np.where(np.mod((m - 1) * j, 2.0) == 1.0, -1.0, 1.0)
    s = np.sin(0.5 * h)
    pole = np.abs(s) < POLE_EPS
    safe = np.where(pole, 1.0, s)
    val = np.where(pole, m * (1.0 - (m * m - 1) * h * h / 24.0), np.sin(0.5 * m * h) / safe)
    out = sign * val
    return float(out) if out.ndim == 0 else out


def dirichlet_onesided(m: int, x):
    """``sum_{k=1}^m exp(i k x)`` (complex)."""
    x = np.asarray(x, dtype=float)
    k = np.arange(1, m + 1)
    return np.exp(1j * np.multiply.outer(x, k)).sum(axis=-1)


def row_lengths(m: int, n: int) -> np.ndarray:
    """``N_k = floor(n (1 - k/m))`` for k = 0..m, exact."""
    k = np.arange(m + 1)
    return (n * (m - k)) // m


def dirichlet_rhombus(m: int, n: int, x, y):
    """Rhombus Dirichlet kernel ``D_mn`` via the row-collapsed form, O(m) per point."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    N = row_lengths(m, n)
    out = dirichlet_ratio(2 * N[0] + 1, y) * np.ones_like(x)
    for k in range(1, m + 1):
        out = out + 2.0 * np.cos(k * x) * dirichlet_ratio(2 * N[k] + 1, y)
    return float(out) if np.ndim(out) == 0 else out


def dirichlet_rhombus_grid(m: int, n: int, xs, ys) -> np.ndarray:
    """``D_mn`` on the tensor grid ``xs x ys`` as a single matrix product."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    k = np.arange(m + 1)
    cx = np.cos(np.multiply.outer(xs, k))
    cx[:, 1:] *= 2.0
    N = row_lengths(m, n)
    ky = np.stack([dirichlet_ratio(2 * int(Nk) + 1, ys) * np.ones_like(ys) for Nk in N])
    return cx @ ky


def dirichlet_rhombus_bruteforce(m: int, n: int, x, y):
    """Direct O(mn) lattice sum over ``|k|/m + |l|/n <= 1``."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.zeros_like(x)
    for k in range(-m, m + 1):
        for l in range(-n, n + 1):
            if abs(k) * n + abs(l) * m <= m * n:
                out = out + np.cos(k * x + l * y)
    return out


def s_kernel(m: int, n: int, x, y):
    """``S_mn = (2/y) D_m(x + ny/m) D_m(x - ny/m) sin(ny/m)``; equals ``2(n/m) D_m(x)^2`` at y = 0."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = n * y / m
    # (2/y) sin(a) = 2 (n/m) sin(a)/a
    return 2.0 * (n / m) * np.sinc(a / np.pi) * dirichlet_ratio(m, x + a) * dirichlet_ratio(m, x - a)


def s_kernel_expanded(m: int, n: int, x, y):
    """Second representation of ``S_mn`` (sum of two shifted Dirichlet terms).

    Not defined at y = 0; used as an independent check of :func:`s_kernel`.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = n * y / m
    first = np.sin(0.5 * (m + 1) * (x - a) + n * y) * dirichlet_ratio(m, x - a)
    second = np.sin(0.5 * (m + 1) * (x + a) - n * y) * dirichlet_ratio(m, x + a)
    return 2.0 / y * (first - second + np.sin(n * y))


def f_kernel(m: int, n: int, x, y, variant: str = DEFAULT_F_VARIANT):
    """Fractional-part kernel ``4 sum_{k=1}^m {-nk/m} cos(kx) cos(n(1 -+ k/m) y)``.

    ``variant="minus"`` uses ``cos(n(1 - k/m) y)``, ``variant="plus"`` uses
    ``cos(n(1 + k/m) y)``.
    """
    if variant not in F_VARIANTS:
        raise ValueError(f"unknown F variant {variant!r}")
    sgn = -1.0 if variant == "minus" else 1.0
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    w = frac_weights(m, n)
    out = np.zeros_like(x)
    for k in range(1, m + 1):
        if w[k] == 0.0:
            continue
        out = out + w[k] * np.cos(k * x) * np.cos(n * (1.0 + sgn * k / m) * y)
    return 4.0 * out


def f_kernel_grid(m: int, n: int, xs, ys, variant: str = DEFAULT_F_VARIANT) -> np.ndarray:
    if variant not in F_VARIANTS:
        raise ValueError(f"unknown F variant {variant!r}")
    sgn = -1.0 if variant == "minus" else 1.0
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    k = np.arange(1, m + 1)
    w = frac_weights(m, n)[1:]
    cx = 4.0 * w * np.cos(np.multiply.outer(xs, k))
    cy = np.cos(np.multiply.outer(n * (1.0 + sgn * k / m), ys))
    return cx @ cy


def r_kernel(m: int, n: int, x, y, trunc: TruncationSpec = TruncationSpec(),
             series_sign: int = -1):
    """Truncated remainder kernel ``R_mn`` (sum over ``1 <= |nu| <= V``).

    ``R = series_sign * sum_nu y/(pi nu (2 pi nu + y)) sum_k e^{ikx} sin(N_k (2 pi nu + y))
    + sum_k e^{ikx} cos(N_k y)`` with ``N_k = n(1 - |k|/m)``. The sawtooth
    expansion ``{t} = 1/2 - sum_nu e^{2 pi i nu t} / (2 pi i nu)`` gives
    ``series_sign = -1``; with ``+1`` the identity ``D = S - F + R`` fails.

    Returns ``(value, tail_bound)``. Raises :class:`SingularPointError` if
    ``2 pi nu + y`` vanishes for some retained ``nu``.
    """
    if series_sign not in (-1, 1):
        raise ValueError("series_sign must be -1 or +1")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shape = x.shape
    xf, yf = x.ravel(), y.ravel()
    nu = np.concatenate([-np.arange(trunc.V, 0, -1), np.arange(1, trunc.V + 1)]).astype(float)
    shifted = TWO_PI * nu[None, :] + yf[:, None]
    if np.any(np.abs(shifted) < 1e-12):
        raise SingularPointError("y coincides with -2 pi nu for a retained nu")
    coef = yf[:, None] / (np.pi * nu[None, :] * shifted)

    Nk = n * (1.0 - np.arange(m + 1) / m)
    series = np.sin(Nk[0] * shifted)
    cosine = np.cos(Nk[0] * yf)
    for k in range(1, m + 1):
        ck = 2.0 * np.cos(k * xf)
        series = series + ck[:, None] * np.sin(Nk[k] * shifted)
        cosine = cosine + ck * np.cos(Nk[k] * yf)
    value = series_sign * (coef * series).sum(axis=1) + cosine
    bound = trunc.tail_bound(m, yf)
    return value.reshape(shape), bound.reshape(shape)


def decomposition_residual(m: int, n: int, x, y, trunc: TruncationSpec = TruncationSpec(),
                           variant: str = DEFAULT_F_VARIANT, series_sign: int = -1):
    """``|D_mn - (S_mn - F_mn + R_mn)|`` together with the truncation tail bound."""
    d = dirichlet_rhombus(m, n, x, y)
    s = s_kernel(m, n, x, y)
    f = f_kernel(m, n, x, y, variant)
    r, bound = r_kernel(m, n, x, y, trunc, series_sign)
    return np.abs(d - (s - f + r)), bound


def script_f(m: int, p: int, x):
    """``sum_{k=0}^m {-pk/m} exp(i k x)`` (complex)."""
    x = np.asarray(x, dtype=float)
    w = frac_weights(m, p)
    k = np.arange(m + 1)
    return np.exp(1j * np.multiply.outer(x, k)) @ w


def boundary_points(m: int, n: int) -> list[tuple[int, int]]:
    """Lattice points with ``|k|/m + |l|/n = 1``, found by exact divisibility."""
    pts = []
    for k in range(-m, m + 1):
        num = n * (m - abs(k))
        if num % m:
            continue
        l = num // m
        pts.append((k, l))
        if l:
            pts.append((k, -l))
    return pts


def boundary_kernel(m: int, n: int, x, y):
    """Sum of ``exp(i(kx + ly))`` over the rhombus boundary (real by symmetry)."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.zeros_like(x)
    for k, l in boundary_points(m, n):
        out = out + np.cos(k * x + l * y)
    return out


def open_rhombus_kernel(m: int, n: int, x, y):
    """Dirichlet kernel of the open rhombus ``|k|/m + |l|/n < 1``."""
    return dirichlet_rhombus(m, n, x, y) - boundary_kernel(m, n, x, y)


def delta_kernels(m: int, x, y):
    """The pair ``(S_mm / 2, D_m(x - y) sin(m(x + y)/2))``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    first = 0.5 * s_kernel(m, m, x, y)
    second = dirichlet_ratio(m, x - y) * np.sin(0.5 * m * (x + y))
    return first, second


def phi_factor(m: int, n: int, x, y):
    a = 0.5 * (m * np.asarray(x, dtype=float) + n * np.asarray(y, dtype=float))
    b = 0.5 * (m * np.asarray(x, dtype=float) - n * np.asarray(y, dtype=float))
    return np.abs(np.sin(a) * np.sin(b)) + np.abs(np.cos(a) * np.cos(b))


def _flag_s(m, n, x, y):
    a = n * y / m
    return bool(np.any(np.asarray(y) == 0.0) or np.any(_near_pole(x + a)) or np.any(_near_pole(x - a)))


def kernel_value(name: str, m: int, n: int, x: float, y: float = 0.0, *,
                 variant: str = DEFAULT_F_VARIANT,
                 trunc: TruncationSpec = TruncationSpec()) -> KernelValue:
    """Evaluate one named kernel at a single point.

    Names: ``dirichlet`` (D_m, ignores n and y), ``rhombus``, ``s``, ``f``,
    ``r``, ``boundary``, ``open_rhombus``, ``delta1``, ``delta2``, ``phi``.
    """
    if name == "dirichlet":
        return KernelValue(float(dirichlet_ratio(m, x)), bool(_near_pole(x)))
    if name == "rhombus":
        flag = bool(row_lengths(m, n)[0] > 0 and _near_pole(y))
        return KernelValue(float(dirichlet_rhombus(m, n, x, y)), flag)
    if name == "s":
        return KernelValue(float(s_kernel(m, n, x, y)), _flag_s(m, n, x, y))
    if name == "f":
        return KernelValue(float(f_kernel(m, n, x, y, variant)))
    if name == "r":
        return KernelValue(float(r_kernel(m, n, x, y, trunc)[0]))
    if name == "boundary":
        return KernelValue(float(boundary_kernel(m, n, x, y)))
    if name == "open_rhombus":
        return KernelValue(float(open_rhombus_kernel(m, n, x, y)))
    if name == "delta1":
        return KernelValue(float(delta_kernels(m, x, y)[0]), _flag_s(m, m, x, y))
    if name == "delta2":
        return KernelValue(float(delta_kernels(m, x, y)[1]), bool(_near_pole(x - y)))
    if name == "phi":
        return KernelValue(float(phi_factor(m, n, x, y)))
    raise ValueError(f"unknown kernel {name!r}")
