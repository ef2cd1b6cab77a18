"""Lissajous-Chebyshev node sets on [-1, 1]^2.

For coprime ``(m, n)`` the degenerate Lissajous curve ``t -> (cos nt, cos mt)``
passes through ``(m+1)(n+1)/2`` distinct points at ``t = pi k/(mn)``. They are
the tensor Chebyshev-Gauss-Lobatto points ``(u_k, v_l)`` with ``k + l`` even.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .chebyshev import InvalidDegreeError, cgl_points


class CoprimalityError(ValueError):
    pass


@dataclass(frozen=True)
class DegreePair:
    """Degrees ``(m, n)`` with the Euclidean split ``n = lambda*m + p``, ``0 <= p < m``."""

    m: int
    n: int
    lam: int = field(init=False)
    p: int = field(init=False)

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise InvalidDegreeError(f"{name} must be a positive integer, got {v!r}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))
        lam, p = divmod(self.n, self.m)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "p", p)

    @property
    def coprime(self) -> bool:
        return math.gcd(self.m, self.n) == 1

    def require_coprime(self):
        if not self.coprime:
            raise CoprimalityError(
                f"(m, n) = ({self.m}, {self.n}) are not relatively prime "
                f"(gcd = {math.gcd(self.m, self.n)})"
            )
        return self


def _pair(degrees) -> DegreePair:
    if isinstance(degrees, DegreePair):
        return degrees
    return DegreePair(*degrees)


VERTEX, EDGE, INTERIOR = "vertex", "edge", "interior"


@dataclass(frozen=True)
class Node:
    k: int
    l: int
    u: float
    v: float
    weight: float
    kind: str


@dataclass(frozen=True)
class NodeSet:
    degrees: DegreePair
    entries: tuple[Node, ...]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def indices(self) -> list[tuple[int, int]]:
        return [(e.k, e.l) for e in self.entries]

    @property
    def points(self) -> np.ndarray:
        return np.array([(e.u, e.v) for e in self.entries])

    @property
    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.entries])

    def position(self, index: tuple[int, int]) -> int:
        try:
            return self._lookup[tuple(index)]
        except KeyError:
            raise KeyError(f"{index!r} is not a node index of LC_{self.degrees.m},{self.degrees.n}") from None

    @property
    def _lookup(self) -> dict:
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = {(e.k, e.l): i for i, e in enumerate(self.entries)}
            object.__setattr__(self, "_lookup_cache", cache)
        return cache

    def to_csv(self, fh=None) -> str:
        buf = io.StringIO() if fh is None else fh
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "l", "u", "v", "weight", "class"])
        for e in self.entries:
            w.writerow([e.k, e.l, f"{e.u:.17g}", f"{e.v:.17g}", f"{e.weight:.17g}", e.kind])
        return buf.getvalue() if fh is None else ""


@dataclass(frozen=True)
class SpectralSet:
    degrees: DegreePair
    pairs: tuple[tuple[int, int], ...]

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def lissajous_point(degrees, t):
    """Point ``(cos nt, cos mt)`` of the degenerate Lissajous curve."""
    d = _pair(degrees)
    t = np.asarray(t, dtype=float)
    return np.cos(d.n * t), np.cos(d.m * t)


def index_set(degrees) -> list[tuple[int, int]]:
    d = _pair(degrees).require_coprime()
    return [(k, l) for k in range(d.m + 1) for l in range(d.n + 1) if (k + l) % 2 == 0]


def _classify(k: int, l: int, m: int, n: int) -> str:
    on_u = k in (0, m)
    on_v = l in (0, n)
    if on_u and on_v:
        return VERTEX
    if on_u or on_v:
        return EDGE
    return INTERIOR


_WEIGHT_NUMERATOR = {VERTEX: 0.5, EDGE: 1.0, INTERIOR: 2.0}


def build_nodes(degrees) -> NodeSet:
    """Lissajous-Chebyshev nodes with their cubature weights and boundary class."""
    d = _pair(degrees).require_coprime()
    m, n = d.m, d.n
    u = cgl_points(m).points
    v = cgl_points(n).points
    entries = []
    for k, l in index_set(d):
        kind = _classify(k, l, m, n)
        entries.append(Node(k, l, float(u[k]), float(v[l]), _WEIGHT_NUMERATOR[kind] / (m * n), kind))
    return NodeSet(d, tuple(entries))


def curve_samples(degrees, tol: float = 1e-12) -> np.ndarray:
    """Distinct points among ``gamma(pi k/(mn))``, k = 0..mn, deduplicated at ``tol``."""
    d = _pair(degrees).require_coprime()
    t = np.pi * np.arange(d.m * d.n + 1) / (d.m * d.n)
    pts = np.column_stack(lissajous_point(d, t))
    keep: list[np.ndarray] = []
    for p in pts:
        if not any(np.max(np.abs(p - q)) <= tol for q in keep):
            keep.append(p)
    return np.array(keep)


def curve_node_match(degrees, tol: float = 1e-12) -> bool:
    """True iff the sampled curve points and the index-generated nodes coincide as sets."""
    d = _pair(degrees).require_coprime()
    sampled = curve_samples(d, tol)
    nodes = build_nodes(d).points
    if len(sampled) != len(nodes):
        return False
    # every sampled point must hit a node and vice versa
    dist = np.max(np.abs(sampled[:, None, :] - nodes[None, :, :]), axis=2)
    return bool(np.all(dist.min(axis=1) <= tol) and np.all(dist.min(axis=0) <= tol))


def spectral_set(degrees) -> SpectralSet:
    """Frequencies ``{(i, j): i/m + j/n < 1} U {(0, n)}`` spanning the interpolation space."""
    d = _pair(degrees).require_coprime()
    m, n = d.m, d.n
    pairs = [(i, j) for i in range(m + 1) for j in range(n + 1) if i * n + j * m < m * n]
    pairs.append((0, n))
    return SpectralSet(d, tuple(pairs))


def write_nodes_csv(nodes: NodeSet, path) -> None:
    with open(path, "w", newline="") as fh:
        nodes.to_csv(fh)


def coprime_pairs(limit: int) -> Iterable[tuple[int, int]]:
    for m in range(1, limit + 1):
        for n in range(1, limit + 1):
            if math.gcd(m, n) == 1:
                yield m, n
