"""Chebyshev-Gauss-Lobatto points and the normalized Chebyshev basis.

The normalized polynomials are ``C_0 = 1`` and ``C_n(u) = sqrt(2) cos(n arccos u)``,
orthonormal with respect to ``du / (pi sqrt(1 - u^2))`` on [-1, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SQRT2 = np.sqrt(2.0)


class InvalidDegreeError(ValueError):
    pass


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class AngleGrid:
    m: int
    points: np.ndarray

    def __len__(self):
        return len(self.points)


def cgl_points(m: int) -> AngleGrid:
    """Chebyshev-Gauss-Lobatto points ``cos(k pi / m)``, k = 0..m."""
    if int(m) != m or m < 1:
        raise InvalidDegreeError(f"grid order must be a positive integer, got {m!r}")
    m = int(m)
    pts = np.cos(np.arange(m + 1) * np.pi / m)
    # exact endpoints and centre
    pts[0], pts[-1] = 1.0, -1.0
    if m % 2 == 0:
        pts[m // 2] = 0.0
    pts.setflags(write=False)
    return AngleGrid(m, pts)


def cheb_angle(n, theta):
    """``C_n(cos theta)`` evaluated directly in the angle variable."""
    n = np.asarray(n)
    return np.where(n == 0, 1.0, SQRT2 * np.cos(n * theta))


def cheb_eval(n: int, u):
    """Normalized Chebyshev polynomial ``C_n(u)`` for ``|u| <= 1``."""
    if int(n) != n or n < 0:
        raise InvalidDegreeError(f"degree must be a nonnegative integer, got {n!r}")
    u = np.asarray(u, dtype=float)
    if np.any(np.abs(u) > 1.0):
        raise DomainError("Chebyshev evaluation requires |u| <= 1")
    if n == 0:
        out = np.ones_like(u)
    else:
        out = SQRT2 * np.cos(n * np.arccos(u))
    return float(out) if out.ndim == 0 else out


def cheb_recurrence(n: int, u):
    """Three-term recurrence evaluation of ``C_n``; kept as an independent check."""
    u = np.asarray(u, dtype=float)
    if n == 0:
        return np.ones_like(u)
    t_prev, t = np.ones_like(u), u.copy()
    for _ in range(n - 1):
        t_prev, t = t, 2 * u * t - t_prev
    return SQRT2 * t


def cheb_basis_angle(degrees, theta) -> np.ndarray:
    """Matrix ``[C_d(cos theta_p)]`` with shape ``(len(theta), len(degrees))``."""
    degrees = np.asarray(degrees)
    theta = np.asarray(theta, dtype=float)
    return cheb_angle(degrees[None, :], theta[:, None])
