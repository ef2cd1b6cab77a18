"""Lagrange interpolation on Lissajous-Chebyshev nodes.

The interpolant is kept in the Chebyshev product basis over the spectral set
``Gamma``: ``c_ij = sum_nodes w_kl f(u_k, v_l) C_i(u_k) C_j(v_l)`` and

    P f(u, v) = sum_Gamma c_ij C_i(u) C_j(v) - c_{0n} C_n(v) / 2.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .chebyshev import DomainError, cheb_angle
from .lcnodes import DegreePair, NodeSet, spectral_set
from .search import SearchResult, SearchSpec, aligned_axis, grid_maximize


class SampleMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Interpolant:
    degrees: DegreePair
    pairs: tuple[tuple[int, int], ...]
    coeffs: np.ndarray

    def coefficient(self, i: int, j: int) -> float:
        return float(self.coeffs[self.pairs.index((i, j))])

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {p: float(c) for p, c in zip(self.pairs, self.coeffs)}

    def __call__(self, u, v):
        return evaluate(self, u, v)

    def to_csv(self, fh=None) -> str:
        buf = io.StringIO() if fh is None else fh
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "j", "c_ij"])
        for (i, j), c in zip(self.pairs, self.coeffs):
            w.writerow([i, j, f"{c:.17g}"])
        return buf.getvalue() if fh is None else ""


def _check_square(u, v):
    if np.any(np.abs(u) > 1.0) or np.any(np.abs(v) > 1.0):
        raise DomainError("point outside [-1, 1]^2")


def _gamma_arrays(d: DegreePair):
    pairs = spectral_set(d).pairs
    gi = np.array([p[0] for p in pairs])
    gj = np.array([p[1] for p in pairs])
    # halve the (0, n) column on the evaluation side
    half = np.ones(len(pairs))
    half[-1] = 0.5
    return pairs, gi, gj, half


def _node_basis(nodes: NodeSet, gi, gj) -> np.ndarray:
    """``C_i(u_k) C_j(v_l)`` with shape ``(nodes, Gamma)``, from exact node angles."""
    d = nodes.degrees
    k = np.array([e.k for e in nodes]) * np.pi / d.m
    l = np.array([e.l for e in nodes]) * np.pi / d.n
    return cheb_angle(gi[None, :], k[:, None]) * cheb_angle(gj[None, :], l[:, None])


def _point_basis(gi, gj, half, x, y) -> np.ndarray:
    """Evaluation-side basis in angle coordinates, ``(points, Gamma)``."""
    return half * cheb_angle(gi[None, :], x[:, None]) * cheb_angle(gj[None, :], y[:, None])


def _samples_vector(nodes: NodeSet, samples) -> np.ndarray:
    if isinstance(samples, Mapping):
        keys = {tuple(k) for k in samples}
        want = set(nodes.indices)
        if keys != want:
            missing = sorted(want - keys)[:5]
            extra = sorted(keys - want)[:5]
            raise SampleMismatchError(f"sample keys do not match nodes (missing {missing}, extra {extra})")
        return np.array([samples[idx] for idx in nodes.indices], dtype=float)
    vec = np.asarray(samples, dtype=float)
    if vec.shape != (len(nodes),):
        raise SampleMismatchError(f"expected {len(nodes)} samples, got shape {vec.shape}")
    return vec


def interpolate(nodes: NodeSet, samples) -> Interpolant:
    """Interpolant of node values.

    ``samples`` is either a mapping ``(k, l) -> value`` covering every node
    exactly once, or a sequence aligned with ``nodes.entries``.
    """
    f = _samples_vector(nodes, samples)
    pairs, gi, gj, _ = _gamma_arrays(nodes.degrees)
    coeffs = (nodes.weights * f) @ _node_basis(nodes, gi, gj)
    return Interpolant(nodes.degrees, pairs, coeffs)


def interpolate_function(nodes: NodeSet, func) -> Interpolant:
    pts = nodes.points
    return interpolate(nodes, func(pts[:, 0], pts[:, 1]))


def evaluate(interp: Interpolant, u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_square(u, v)
    shape = np.broadcast(u, v).shape
    x = np.arccos(np.broadcast_to(u, shape).ravel())
    y = np.arccos(np.broadcast_to(v, shape).ravel())
    _, gi, gj, half = _gamma_arrays(interp.degrees)
    out = _point_basis(gi, gj, half, x, y) @ interp.coeffs
    return float(out[0]) if shape == () else out.reshape(shape)


def _fundamental_matrix(nodes: NodeSet, x, y) -> np.ndarray:
    """All fundamental polynomials at angle points, shape ``(points, nodes)``."""
    _, gi, gj, half = _gamma_arrays(nodes.degrees)
    return (_point_basis(gi, gj, half, x, y) @ _node_basis(nodes, gi, gj).T) * nodes.weights


def fundamental(nodes: NodeSet, at_node, u, v):
    """Fundamental Lagrange polynomial of node ``at_node = (k, l)`` at ``(u, v)``."""
    idx = nodes.position(at_node)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_square(u, v)
    shape = np.broadcast(u, v).shape
    x = np.arccos(np.broadcast_to(u, shape).ravel())
    y = np.arccos(np.broadcast_to(v, shape).ravel())
    out = _fundamental_matrix(nodes, x, y)[:, idx]
    return float(out[0]) if shape == () else out.reshape(shape)


def lebesgue_function_angles(nodes: NodeSet, x, y, chunk: int = 4096) -> np.ndarray:
    """Lebesgue function at ``(cos x, cos y)`` for matching arrays of angles."""
    x = np.ravel(np.asarray(x, dtype=float))
    y = np.ravel(np.asarray(y, dtype=float))
    _, gi, gj, half = _gamma_arrays(nodes.degrees)
    right = (_node_basis(nodes, gi, gj) * nodes.weights[:, None]).T
    out = np.empty(len(x))
    for s in range(0, len(x), chunk):
        sl = slice(s, s + chunk)
        out[sl] = np.abs(_point_basis(gi, gj, half, x[sl], y[sl]) @ right).sum(axis=1)
    return out


def lebesgue_function_lc(nodes: NodeSet, u, v):
    """``sum_nodes |phi(u, v; node)|``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    _check_square(u, v)
    shape = np.broadcast(u, v).shape
    out = lebesgue_function_angles(nodes, np.arccos(np.broadcast_to(u, shape)),
                                   np.arccos(np.broadcast_to(v, shape)))
    return float(out[0]) if shape == () else out.reshape(shape)


def _lc_tensor(nodes: NodeSet):
    def func(xs, ys):
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        return lebesgue_function_angles(nodes, X.ravel(), Y.ravel()).reshape(X.shape)
    return func


def lebesgue_constant_lc(nodes: NodeSet, search: SearchSpec = SearchSpec()) -> SearchResult:
    """Maximum of the Lebesgue function over the square.

    Searched in angle coordinates ``(x, y) in [0, pi]^2`` on a uniform grid
    merged with the multiples of ``pi/(2m)`` and ``pi/(2n)``, then refined.
    The returned ``x, y`` are angles; the maximizing point is ``(cos x, cos y)``.
    """
    m, n = nodes.degrees.m, nodes.degrees.n
    search.validate(m, n)
    g = search.points(8 * max(m, n) + 1)
    xs = aligned_axis(0.0, np.pi, g, np.pi / (2 * m))
    ys = aligned_axis(0.0, np.pi, g, np.pi / (2 * n))
    return grid_maximize(_lc_tensor(nodes), xs, ys, ((0.0, np.pi), (0.0, np.pi)), search)
