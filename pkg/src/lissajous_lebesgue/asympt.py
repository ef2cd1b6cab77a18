"""Main terms, remainder scales and residual sweeps for the three Lebesgue constants.

All three constants share the leading factor ``G(m, n) = 2 ln m ln n - ln^2 m``
(natural logarithms) with coefficients 4/pi^2 (interpolation), 16/pi^4
(continuous partial sums) and 2/pi^2 (discrete partial sums). The remainders
are only known up to unspecified constants, so a sweep reports
``|computed - main| / remainder_scale`` and stability of that ratio across
doublings is what gets checked.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import norms
from .interp import lebesgue_constant_lc
from .lcnodes import DegreePair, build_nodes
from .norms import QuadratureSpec
from .search import SearchSpec

KINDS = ("continuous", "discrete", "lc", "fnorm", "scriptf", "delta1", "delta2")
LEBESGUE_KINDS = ("continuous", "discrete", "lc")
COEFFICIENTS = {"lc": 4 / math.pi**2, "continuous": 16 / math.pi**4, "discrete": 2 / math.pi**2}
CSV_HEADER = ("kind", "m", "n", "lambda", "p", "computed", "main_term", "residual",
              "remainder_scale", "ratio")
DEFAULT_MAX_SIZE = 128


class RegimeError(ValueError):
    pass


class SizeCapError(ValueError):
    pass


def _require_regime(m: int, n: int):
    if m < 3 or m > n:
        raise RegimeError(f"asymptotic formulas need 3 <= m <= n, got (m, n) = ({m}, {n})")


def log_factor(m: int, n: int) -> float:
    """``2 ln m ln n - ln^2 m``."""
    lm, ln_ = math.log(m), math.log(n)
    return 2 * lm * ln_ - lm * lm


def main_term(kind: str, m: int, n: int) -> float:
    if kind not in COEFFICIENTS:
        raise ValueError(f"no main term for kind {kind!r}; expected one of {sorted(COEFFICIENTS)}")
    _require_regime(m, n)
    return COEFFICIENTS[kind] * log_factor(m, n)


def remainder_scale(m: int, n: int) -> float:
    """``ln n + p ln(m/p)`` with ``n = lambda m + p``; just ``ln n`` when m divides n."""
    _require_regime(m, n)
    p = n % m
    if p == 0:
        return math.log(n)
    return math.log(n) + p * math.log(m / p)


def lc_anisotropic_term(m: int, n: int) -> float:
    """Leading term ``(8/pi^2) ln n ln m`` for ``ln n / ln m`` large."""
    return 8 / math.pi**2 * math.log(n) * math.log(m)


def delta1_term(m: int) -> float:
    return 8 / math.pi**2 * math.log(m) ** 2


def delta2_term(m: int) -> float:
    return 16 / math.pi * math.log(m)


@dataclass(frozen=True)
class SweepRecord:
    kind: str
    m: int
    n: int
    lam: int
    p: int
    computed: float
    main_term: float
    residual: float
    remainder_scale: float
    ratio: float
    # relative self-convergence delta of `computed` (not part of the CSV row)
    convergence: float | None = field(default=None, compare=False)

    def row(self) -> list[str]:
        return [self.kind, str(self.m), str(self.n), str(self.lam), str(self.p),
                *(f"{v:.17g}" for v in (self.computed, self.main_term, self.residual,
                                        self.remainder_scale, self.ratio))]


def make_record(kind, m, n, computed, main, scale, convergence=None) -> SweepRecord:
    d = DegreePair(m, n)
    residual = computed - main
    ratio = abs(residual) / scale if scale > 0 else math.inf
    return SweepRecord(kind, m, n, d.lam, d.p, float(computed), float(main), float(residual),
                       float(scale), float(ratio), convergence)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b else abs(a - b)


def fnorm_check(m: int, n: int | None = None, p: int | None = None,
                quad: QuadratureSpec = QuadratureSpec()) -> SweepRecord:
    """Numeric L1 norm of ``F_mn`` (given n) or of the one-variable sum ``F_mp`` (given p).

    Applicable bounds: ``ln^2 m`` always, ``p ln(m/p)`` when ``1 <= p < m``;
    the ratio is taken against the smaller of the applicable scales.
    """
    if (n is None) == (p is None):
        raise ValueError("give exactly one of n or p")
    if n is not None:
        kind, second, pp = "fnorm", n, n % m
        compute = lambda q: norms.f_norm(m, n, q)
    else:
        kind, second, pp = "scriptf", p, p
        compute = lambda q: norms.script_f_norm(m, p, q)
    value = compute(quad)
    scales = [math.log(m) ** 2]
    if 1 <= pp < m:
        scales.append(pp * math.log(m / pp))
    conv = _rel(compute(quad.refined()), value) if value else 0.0
    return make_record(kind, m, second, value, 0.0, min(scales), conv)


def _one(kind, m, n, quad, search, check_convergence):
    if kind == "continuous":
        value = norms.lebesgue_continuous(m, n, quad)
        conv = _rel(norms.lebesgue_continuous(m, n, quad.refined()), value) if check_convergence else None
        return make_record(kind, m, n, value, main_term(kind, m, n), remainder_scale(m, n), conv)
    if kind == "discrete":
        res = norms.lebesgue_constant_discrete(m, n, search)
        conv = None
        if check_convergence:
            more = norms.lebesgue_constant_discrete(
                m, n, SearchSpec(search.grid_points_per_axis, search.refinement_rounds + 1,
                                 search.refinement_factor, search.candidates))
            conv = _rel(more.value, res.value)
        return make_record(kind, m, n, res.value, main_term(kind, m, n), remainder_scale(m, n), conv)
    if kind == "lc":
        nodes = build_nodes((m, n))
        res = lebesgue_constant_lc(nodes, search)
        conv = None
        if check_convergence:
            more = lebesgue_constant_lc(
                nodes, SearchSpec(search.grid_points_per_axis, search.refinement_rounds + 1,
                                  search.refinement_factor, search.candidates))
            conv = _rel(more.value, res.value)
        return make_record(kind, m, n, res.value, main_term(kind, m, n), remainder_scale(m, n), conv)
    if kind == "delta1":
        value = norms.delta1_norm(m, quad)
        conv = _rel(norms.delta1_norm(m, quad.refined()), value) if check_convergence else None
        return make_record(kind, m, m, value, delta1_term(m), math.log(m), conv)
    if kind == "delta2":
        value = norms.delta2_norm(m, quad)
        conv = _rel(norms.delta2_norm(m, quad.refined()), value) if check_convergence else None
        return make_record(kind, m, m, value, delta2_term(m), 1.0, conv)
    if kind == "fnorm":
        return fnorm_check(m, n=n, quad=quad)
    if kind == "scriptf":
        return fnorm_check(m, p=n, quad=quad)
    raise ValueError(f"unknown sweep kind {kind!r}; expected one of {KINDS}")


def sweep(kind: str, sizes: Iterable[Sequence[int] | int],
          quad: QuadratureSpec = QuadratureSpec(), search: SearchSpec = SearchSpec(),
          max_size: int = DEFAULT_MAX_SIZE, check_convergence: bool = True) -> list[SweepRecord]:
    """One record per size.

    ``sizes`` holds ``(m, n)`` pairs; for ``scriptf`` the second entry is
    ``p``, and ``delta1``/``delta2`` also accept a bare ``m``.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown sweep kind {kind!r}; expected one of {KINDS}")
    pairs = [(int(s), int(s)) if np.ndim(s) == 0 else (int(s[0]), int(s[1])) for s in sizes]
    for m, n in pairs:
        if max(m, n) > max_size:
            raise SizeCapError(
                f"size ({m}, {n}) exceeds the desk-scale cap {max_size}; "
                f"raise max_size explicitly if the run time is acceptable"
            )
    return [_one(kind, m, n, quad, search, check_convergence) for m, n in pairs]


def ratio_spread(records: Sequence[SweepRecord]) -> float:
    """Largest factor between the ratios of consecutive records (1.0 = perfectly stable)."""
    worst = 1.0
    for a, b in zip(records, records[1:]):
        lo, hi = sorted((a.ratio, b.ratio))
        worst = max(worst, hi / lo if lo > 0 else math.inf)
    return worst


def records_to_csv(records: Iterable[SweepRecord], fh=None) -> str:
    buf = io.StringIO() if fh is None else fh
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue() if fh is None else ""
