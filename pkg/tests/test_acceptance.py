"""Acceptance criteria A1-A10, one test per criterion.

A one-line PASS/FAIL summary per criterion is printed at the end of the run
(see conftest.py). Tolerances and runtime budgets are the contract values.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest
from numpy.polynomial.chebyshev import chebvander

from lissajous_lebesgue import asympt as A
from lissajous_lebesgue import kernels as K
from lissajous_lebesgue import norms as N
from lissajous_lebesgue.cli import verification_points
from lissajous_lebesgue.interp import evaluate, fundamental, interpolate, interpolate_function
from lissajous_lebesgue.lcnodes import build_nodes, spectral_set
from lissajous_lebesgue.search import SearchSpec


def lattice_sum(m, n, x, y):
    """Brute-force sum of cos(kx + ly) over the closed rhombus, membership in integers."""
    k, l = np.meshgrid(np.arange(-m, m + 1), np.arange(-n, n + 1), indexing="ij")
    inside = n * np.abs(k) + m * np.abs(l) <= m * n
    k, l = k[inside], l[inside]
    return np.cos(np.multiply.outer(x, k) + np.multiply.outer(y, l)).sum(axis=-1)


def basis_values(mn, u, v):
    m, n = mn
    top = max(m, n)
    scale = np.r_[1.0, np.full(top, np.sqrt(2.0))]
    a = chebvander(np.asarray(u), top) * scale
    b = chebvander(np.asarray(v), top) * scale
    return np.stack([a[:, i] * b[:, j] for i, j in spectral_set(mn).pairs], axis=1)


def fmt_ratios(records):
    return ", ".join(f"{r.ratio:.3f}" for r in records)


def test_A1_decomposition_identity(record_property):
    t0 = time.perf_counter()
    trunc = K.TruncationSpec(2000)
    worst = 0.0
    for mn in [(2, 3), (3, 4), (5, 7), (7, 23), (4, 4), (4, 12)]:
        x, y = verification_points(*mn, 200, seed=0)
        res, bound = K.decomposition_residual(*mn, x, y, trunc)
        assert np.all(res <= bound + 1e-8), mn
        worst = max(worst, float((res / (bound + 1e-8)).max()))
    x, y = verification_points(2, 3, 200, seed=0)
    passing = []
    for variant in K.F_VARIANTS:
        res, bound = K.decomposition_residual(2, 3, x, y, trunc, variant)
        if np.all(res <= bound + 1e-8):
            passing.append(variant)
    elapsed = time.perf_counter() - t0
    record_property("detail", f"worst residual/bound {worst:.3f}; passing F variants on (2,3): {passing}")
    assert passing == [K.DEFAULT_F_VARIANT]
    assert elapsed < 60


def test_A2_s_form_equivalence(record_property):
    t0 = time.perf_counter()
    worst = 0.0
    for mn in [(3, 5), (8, 13)]:
        x, y = verification_points(*mn, 1000, seed=1)
        s1, s2 = K.s_kernel(*mn, x, y), K.s_kernel_expanded(*mn, x, y)
        rel = np.abs(s1 - s2) / np.maximum(1.0, np.abs(s1))
        worst = max(worst, float(rel.max()))
    record_property("detail", f"max relative difference {worst:.2e}")
    assert worst <= 1e-9
    assert time.perf_counter() - t0 < 5


def test_A3_kernel_oracle(record_property):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    worst = 0.0
    for m in range(1, 17):
        for n in range(1, 17):
            x, y = rng.uniform(-np.pi, np.pi, (2, 100))
            ref = lattice_sum(m, n, x, y)
            got = K.dirichlet_rhombus(m, n, x, y)
            worst = max(worst, float((np.abs(got - ref) / np.maximum(1.0, np.abs(ref))).max()))
    origin = K.dirichlet_rhombus(1, 1, 0.0, 0.0)
    record_property("detail", f"max relative difference {worst:.2e}; D_11(0,0) = {origin!r}")
    assert worst <= 1e-9
    assert origin == 5.0
    assert time.perf_counter() - t0 < 5


def test_A4_interpolation(record_property):
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    errs = dict(exact=0.0, reprod=0.0, kron=0.0, weights=0.0)
    for mn in [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (7, 23)]:
        m, n = mn
        nodes = build_nodes(mn)
        pts = nodes.points
        assert len(nodes) == (m + 1) * (n + 1) // 2
        for _ in range(10):
            a, b, c, d = rng.normal(size=4)
            f = lambda u, v: np.exp(a * u + b * v) * np.sin(c * u * v + d)
            interp = interpolate_function(nodes, f)
            errs["exact"] = max(errs["exact"], float(np.abs(evaluate(interp, pts[:, 0], pts[:, 1]) - f(pts[:, 0], pts[:, 1])).max()))
        u, v = rng.uniform(-1, 1, (2, 100))
        for _ in range(10):
            q = rng.normal(size=len(nodes))
            interp = interpolate(nodes, basis_values(mn, pts[:, 0], pts[:, 1]) @ q)
            errs["reprod"] = max(errs["reprod"], float(np.abs(evaluate(interp, u, v) - basis_values(mn, u, v) @ q).max()))
        M = np.column_stack([fundamental(nodes, idx, pts[:, 0], pts[:, 1]) for idx in nodes.indices])
        errs["kron"] = max(errs["kron"], float(np.abs(M - np.eye(len(nodes))).max()))
        errs["weights"] = max(errs["weights"], abs(math.fsum(nodes.weights) - 1.0))
    record_property("detail", ", ".join(f"{k} {v:.1e}" for k, v in errs.items()))
    assert errs["exact"] <= 1e-9
    assert errs["reprod"] <= 1e-8
    assert errs["kron"] <= 1e-9
    assert errs["weights"] <= 1e-12
    assert time.perf_counter() - t0 < 30


def test_A5_continuous_asymptotics(record_property):
    recs = A.sweep("continuous", [(m, m + 1) for m in (8, 16, 32, 64)])
    spread = A.ratio_spread(recs)
    conv = max(r.convergence for r in recs)
    record_property("detail", f"ratios [{fmt_ratios(recs)}], spread {spread:.3f}, self-convergence {conv:.1e}")
    assert spread < 2
    assert conv < 5e-3


def test_A6_lc_asymptotics(record_property):
    recs = A.sweep("lc", [(n, n + 1) for n in (8, 16, 32)])
    values = [r.computed for r in recs]
    spread = A.ratio_spread(recs)
    conv = max(r.convergence for r in recs)
    record_property("detail", f"Lambda [{', '.join(f'{v:.4f}' for v in values)}], ratios [{fmt_ratios(recs)}], "
                              f"spread {spread:.3f}, refinement delta {conv:.1e}")
    assert values[0] < values[1] < values[2]
    assert spread < 2
    assert conv < 1e-3


def test_A7_discrete_asymptotics(record_property):
    groups = {"p=0": [(8, 16), (8, 24), (16, 32)], "p=1": [(8, 9), (16, 17)]}
    spreads, notes = {}, []
    conv = 0.0
    for name, sizes in groups.items():
        recs = A.sweep("discrete", sizes)
        spreads[name] = A.ratio_spread(recs)
        conv = max(conv, max(r.convergence for r in recs))
        notes.append(f"{name} ratios [{fmt_ratios(recs)}] spread {spreads[name]:.3f}")
    defect = max(N.check_periodicity(m, n, samples=100, seed=7) for m, n in [(8, 9), (8, 16)])
    record_property("detail", "; ".join(notes) + f"; periodicity defect {defect:.1e}")
    assert all(s < 2 for s in spreads.values())
    assert conv < 1e-3
    assert defect <= 1e-9


def test_A8_norm_bounds(record_property):
    t0 = time.perf_counter()
    ms = (8, 16, 32, 64)
    d1 = A.sweep("delta1", ms, check_convergence=False)
    d2 = A.sweep("delta2", ms, check_convergence=False)
    sf = [A.fnorm_check(32, p=p) for p in (1, 2, 4)]
    sf_ratios = [r.computed / (p * math.log(32 / p)) for r, p in zip(sf, (1, 2, 4))]
    sf_spread = max(sf_ratios) / min(sf_ratios)
    rng = np.random.default_rng(8)
    x, y = rng.uniform(-np.pi, np.pi, (2, 1000))
    zero_ok = all(np.all(K.f_kernel(m, n, x, y, v) == 0.0) and N.f_norm(m, n, variant=v) == 0.0
                  for m, n in [(2, 4), (4, 12), (8, 16), (5, 5), (3, 27)] for v in K.F_VARIANTS)
    nonzero = all(np.any(K.f_kernel(m, n, x, y) != 0.0) for m, n in [(2, 3), (4, 10), (8, 9)])
    record_property("detail", f"delta1 [{fmt_ratios(d1)}] spread {A.ratio_spread(d1):.3f}; "
                              f"delta2 [{fmt_ratios(d2)}] spread {A.ratio_spread(d2):.3f}; "
                              f"scriptF ratios [{', '.join(f'{r:.3f}' for r in sf_ratios)}] spread {sf_spread:.2f}")
    assert A.ratio_spread(d1) < 2
    assert A.ratio_spread(d2) < 2
    assert sf_spread <= 3
    assert zero_ok and nonzero
    assert time.perf_counter() - t0 < 120


def test_A9_marcinkiewicz_zygmund(record_property):
    t0 = time.perf_counter()
    one = N.mz_ratio([1.0], [], 8)
    maxima = {}
    for n in (8, 32):
        top = np.zeros(n + 1)
        top[n] = 1.0
        cos_n = N.mz_ratio(top, [0.0], n)
        assert abs(one - 1 / (2 * np.pi)) <= 1e-12
        assert abs(cos_n - 0.25) <= 1e-12
        rng = np.random.default_rng(9 + n)
        ratios = [N.mz_ratio(*rng.normal(size=(2, n + 1)), n) for _ in range(100)]
        maxima[n] = max(ratios)
    constant = max(maxima.values())
    record_property("detail", f"max ratio n=8: {maxima[8]:.4f}, n=32: {maxima[32]:.4f}; "
                              f"reported constant {constant:.4f}")
    assert all(math.isfinite(v) for v in maxima.values())
    # one constant for both degrees: the maxima must not drift with n
    assert max(maxima.values()) / min(maxima.values()) < 2
    assert time.perf_counter() - t0 < 10


CLI_RUNS = [
    ["nodes", "--m", "7", "--n", "23"],
    ["kernel-verify", "--m", "2", "--n", "3", "--points", "50", "--seed", "5"],
    ["lebesgue", "--m", "4", "--n", "5", "--seed", "5"],
    ["sweep", "--kind", "delta2", "--sizes", "4:4,8:8", "--seed", "5"],
    ["sweep", "--kind", "scriptf", "--sizes", "8:1,8:3", "--seed", "5"],
]


def test_A10_reproducibility(tmp_path, record_property):
    identical = []
    for i, argv in enumerate(CLI_RUNS):
        outputs = []
        for rep in range(2):
            path = tmp_path / f"run{i}_{rep}.csv"
            proc = subprocess.run([sys.executable, "-m", "lissajous_lebesgue.cli", *argv, "--out", str(path)],
                                  capture_output=True)
            assert proc.returncode == 0, proc.stderr
            outputs.append(path.read_bytes())
        identical.append(outputs[0] == outputs[1] and len(outputs[0]) > 0)
    record_property("detail", f"{sum(identical)}/{len(identical)} commands byte-identical")
    assert all(identical)
