import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lissajous_lebesgue import kernels as K
from lissajous_lebesgue.cli import verification_points

RNG = np.random.default_rng(11)


def lattice_sum(m, n, x, y):
    """O(mn) double sum over the closed rhombus, integer membership test."""
    total = np.zeros(np.broadcast(x, y).shape)
    for k in range(-m, m + 1):
        for l in range(-n, n + 1):
            if n * abs(k) + m * abs(l) <= m * n:
                total = total + np.cos(k * x + l * y)
    return total


# -- Dirichlet ratio ---------------------------------------------------------

def test_dirichlet_examples():
    x = np.linspace(-7, 7, 41)
    np.testing.assert_allclose(K.dirichlet_ratio(1, x), 1.0, atol=1e-15)
    assert K.dirichlet_ratio(5, 0.0) == 5.0
    np.testing.assert_allclose(K.dirichlet_ratio(2, x), 2 * np.cos(x / 2), atol=1e-13)
    assert abs(K.dirichlet_ratio(2, np.pi)) < 1e-15


@pytest.mark.parametrize("m", [1, 2, 3, 8, 17])
@pytest.mark.parametrize("j", [-2, -1, 1, 2, 3])
def test_dirichlet_limit_branch(m, j):
    # near x = 2 pi j the ratio tends to m (-1)^{(m-1) j}
    expect = m * (-1) ** ((m - 1) * j)
    for h in (0.0, 1e-13, -1e-11):
        assert K.dirichlet_ratio(m, 2 * np.pi * j + h) == pytest.approx(expect, rel=1e-9)
    # branch switch is seamless against the closed-form sum of cosines
    for h in (2e-9, 1e-7, 1e-5):
        x = 2 * np.pi * j + h
        direct = sum(np.cos((k - (m - 1) / 2) * x) for k in range(m))
        assert K.dirichlet_ratio(m, x) == pytest.approx(direct, abs=1e-8)


def test_kernel_value_flags():
    assert K.kernel_value("dirichlet", 3, 1, 0.0).singularity_handled
    assert not K.kernel_value("dirichlet", 3, 1, 0.5).singularity_handled
    assert K.kernel_value("s", 3, 4, 0.3, 0.0).singularity_handled
    with pytest.raises(ValueError):
        K.kernel_value("nope", 1, 1, 0.0)


# -- rhombus kernel ----------------------------------------------------------

def test_rhombus_1_1_origin():
    assert K.dirichlet_rhombus(1, 1, 0.0, 0.0) == 5.0


@pytest.mark.parametrize("m", range(1, 9))
@pytest.mark.parametrize("n", range(1, 9))
def test_rhombus_origin_lattice_count(m, n):
    count = sum(2 * ((n * (m - abs(k))) // m) + 1 for k in range(-m, m + 1))
    assert K.dirichlet_rhombus(m, n, 0.0, 0.0) == pytest.approx(count, abs=1e-10)


@pytest.mark.parametrize("mn", [(1, 1), (2, 3), (3, 2), (5, 7), (16, 13), (4, 12)])
def test_rhombus_matches_lattice_sum(mn):
    x, y = RNG.uniform(-np.pi, np.pi, (2, 100))
    ref = lattice_sum(*mn, x, y)
    got = K.dirichlet_rhombus(*mn, x, y)
    np.testing.assert_array_less(np.abs(got - ref), 1e-9 * np.maximum(1.0, np.abs(ref)))


def test_rhombus_grid_matches_pointwise():
    xs = np.linspace(-3, 3, 13)
    ys = np.linspace(-3, 3, 7)
    grid = K.dirichlet_rhombus_grid(5, 7, xs, ys)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    np.testing.assert_allclose(grid, K.dirichlet_rhombus(5, 7, X, Y), atol=1e-11)


def test_rhombus_bruteforce_helper():
    x, y = RNG.uniform(-np.pi, np.pi, (2, 20))
    np.testing.assert_allclose(K.dirichlet_rhombus_bruteforce(3, 4, x, y), lattice_sum(3, 4, x, y), atol=1e-11)


@settings(max_examples=60, deadline=None)
@given(m=st.integers(1, 12), n=st.integers(1, 12),
       x=st.floats(-10, 10), y=st.floats(-10, 10))
def test_rhombus_evenness(m, n, x, y):
    d = K.dirichlet_rhombus(m, n, x, y)
    assert K.dirichlet_rhombus(m, n, -x, y) == pytest.approx(d, abs=1e-9)
    assert K.dirichlet_rhombus(m, n, x, -y) == pytest.approx(d, abs=1e-9)


# -- S kernel ----------------------------------------------------------------

@pytest.mark.parametrize("mn", [(3, 5), (8, 13), (4, 4), (2, 3)])
def test_s_limit_at_y0(mn):
    m, n = mn
    x = np.linspace(-3, 3, 25)
    np.testing.assert_allclose(K.s_kernel(m, n, x, 0.0), 2 * (n / m) * K.dirichlet_ratio(m, x) ** 2, rtol=1e-12)


@pytest.mark.parametrize("mn", [(3, 5), (8, 13), (2, 3), (7, 23)])
def test_s_two_forms(mn):
    x, y = verification_points(*mn, 300, seed=1)
    s1, s2 = K.s_kernel(*mn, x, y), K.s_kernel_expanded(*mn, x, y)
    np.testing.assert_array_less(np.abs(s1 - s2), 1e-9 * (1 + np.abs(s1)))


def test_s_evenness_empirical():
    # S is even in each variable separately, not only jointly
    for mn in [(2, 3), (3, 5), (8, 13)]:
        x, y = RNG.uniform(-np.pi, np.pi, (2, 200))
        s = K.s_kernel(*mn, x, y)
        for sx, sy in [(-1, 1), (1, -1), (-1, -1)]:
            np.testing.assert_allclose(K.s_kernel(*mn, sx * x, sy * y), s, atol=1e-9 * (1 + np.abs(s).max()))


def test_s_mm_is_twice_delta1():
    x, y = RNG.uniform(-np.pi, np.pi, (2, 50))
    d1, _ = K.delta_kernels(6, x, y)
    np.testing.assert_allclose(K.s_kernel(6, 6, x, y), 2 * d1, rtol=1e-13)


# -- F, R, decomposition -----------------------------------------------------

def test_fractional_parts():
    assert K.frac_neg(3, 2) == 0.5
    assert K.frac_neg(6, 2) == 0.0
    np.testing.assert_array_equal(K.frac_weights(2, 3), [0.0, 0.5, 0.0])


@pytest.mark.parametrize("variant", K.F_VARIANTS)
@pytest.mark.parametrize("mn", [(2, 4), (3, 9), (5, 5), (1, 7)])
def test_f_vanishes_when_m_divides_n(mn, variant):
    x, y = RNG.uniform(-np.pi, np.pi, (2, 30))
    assert np.all(K.f_kernel(*mn, x, y, variant) == 0.0)


@pytest.mark.parametrize("variant, sign", [("minus", -1), ("plus", 1)])
def test_f_2_3_single_term(variant, sign):
    x, y = RNG.uniform(-np.pi, np.pi, (2, 30))
    expect = 2 * np.cos(x) * np.cos(3 * (1 + sign * 0.5) * y)
    np.testing.assert_allclose(K.f_kernel(2, 3, x, y, variant), expect, atol=1e-14)


def test_f_at_origin():
    for m, n in [(3, 4), (5, 7), (7, 23)]:
        expect = 4 * math.fsum(((-n * k) % m) / m for k in range(1, m + 1))
        assert K.f_kernel(m, n, 0.0, 0.0) == pytest.approx(expect, abs=1e-12)


def test_f_grid_matches_pointwise():
    xs, ys = np.linspace(-3, 3, 9), np.linspace(-3, 3, 11)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    for variant in K.F_VARIANTS:
        np.testing.assert_allclose(K.f_kernel_grid(5, 7, xs, ys, variant),
                                   K.f_kernel(5, 7, X, Y, variant), atol=1e-12)


def test_f_unknown_variant():
    with pytest.raises(ValueError):
        K.f_kernel(2, 3, 0.0, 0.0, "sideways")


def test_truncation_spec():
    assert K.TruncationSpec(1000).tail_bound(4, np.pi / 2) == pytest.approx(1.4324e-3, rel=1e-4)
    assert K.TruncationSpec(2000).tail_bound(4, 1.0) == pytest.approx(K.TruncationSpec(1000).tail_bound(4, 1.0) / 2)
    for bad in (0, -3, 2.5):
        with pytest.raises(ValueError):
            K.TruncationSpec(bad)


def test_r_cosine_term_at_y0():
    x = np.linspace(-3, 3, 11)
    r, bound = K.r_kernel(3, 4, x, 0.0, K.TruncationSpec(50))
    np.testing.assert_allclose(r, 1 + 2 * sum(np.cos(k * x) for k in range(1, 4)), atol=1e-12)
    assert np.all(bound == 0)


def test_r_singular_point():
    with pytest.raises(K.SingularPointError):
        K.r_kernel(2, 3, 0.1, -2 * np.pi, K.TruncationSpec(10))


@pytest.mark.parametrize("mn", [(2, 3), (3, 4), (4, 4), (3, 8)])
def test_decomposition_default_variant(mn):
    x, y = verification_points(*mn, 60, seed=3)
    res, bound = K.decomposition_residual(*mn, x, y, K.TruncationSpec(2000))
    assert np.all(res <= bound + 1e-8)


def test_decomposition_rejects_plus_variant_and_printed_sign():
    x, y = verification_points(2, 3, 60, seed=3)
    trunc = K.TruncationSpec(2000)
    res, bound = K.decomposition_residual(2, 3, x, y, trunc, "plus")
    assert np.any(res > bound + 1e-8)
    res, bound = K.decomposition_residual(2, 3, x, y, trunc, "minus", series_sign=1)
    assert np.any(res > bound + 1e-8)


def test_residual_shrinks_with_V():
    x, y = verification_points(3, 4, 30, seed=5)
    r1, _ = K.decomposition_residual(3, 4, x, y, K.TruncationSpec(200))
    r2, _ = K.decomposition_residual(3, 4, x, y, K.TruncationSpec(3200))
    assert r2.max() < r1.max()


# -- remaining kernels ---------------------------------------------------------

def test_script_f_examples():
    assert K.script_f(2, 3, 0.0) == pytest.approx(0.5)
    assert np.all(K.script_f(4, 8, np.linspace(0, 6, 7)) == 0)
    for m, p in [(5, 2), (7, 3)]:
        v = K.script_f(m, p, 0.0)
        assert v.imag == 0 and v.real == pytest.approx(math.fsum(((-p * k) % m) / m for k in range(m + 1)))


@pytest.mark.parametrize("mn, expect", [((1, 1), [(-1, 0), (0, 1), (0, -1), (1, 0)]),
                                        ((2, 3), [(-2, 0), (0, 3), (0, -3), (2, 0)])])
def test_boundary_points(mn, expect):
    assert sorted(K.boundary_points(*mn)) == sorted(expect)


@pytest.mark.parametrize("mn", [(1, 1), (2, 3), (4, 6), (3, 9), (5, 7)])
def test_boundary_partition(mn):
    m, n = mn
    exact = sum(1 for k in range(-m, m + 1) for l in range(-n, n + 1) if n * abs(k) + m * abs(l) == m * n)
    assert K.boundary_kernel(m, n, 0.0, 0.0) == exact
    x, y = RNG.uniform(-3, 3, (2, 20))
    np.testing.assert_allclose(K.boundary_kernel(m, n, x, y) + K.open_rhombus_kernel(m, n, x, y),
                               K.dirichlet_rhombus(m, n, x, y), atol=1e-12)
    assert K.open_rhombus_kernel(1, 1, 0.0, 0.0) == pytest.approx(1.0)


def test_delta_kernels_examples():
    x = np.linspace(-3, 3, 9)
    _, d2 = K.delta_kernels(5, x, x)
    np.testing.assert_allclose(d2, 5 * np.sin(5 * x), atol=1e-12)
    d1, _ = K.delta_kernels(5, x, 0.0)
    np.testing.assert_allclose(d1, K.dirichlet_ratio(5, x) ** 2, rtol=1e-12)
    assert K.delta_kernels(5, 0.0, 0.0)[1] == 0.0


@settings(max_examples=100, deadline=None)
@given(m=st.integers(1, 20), n=st.integers(1, 20), x=st.floats(-10, 10), y=st.floats(-10, 10))
def test_phi_bounds_and_evenness(m, n, x, y):
    v = K.phi_factor(m, n, x, y)
    assert 0 <= v <= 1 + 1e-12
    assert K.phi_factor(m, n, -x, -y) == pytest.approx(v, abs=1e-12)


def test_phi_examples():
    assert K.phi_factor(3, 4, 0.0, 0.0) == 1.0
    # a = 0, b = pi/2 -> x = pi/(2m), y = -pi/(2n)
    assert K.phi_factor(3, 4, np.pi / 6, -np.pi / 8) == pytest.approx(0.0, abs=1e-15)


# -- finiteness stress -------------------------------------------------------

def stress_points(m, n, count):
    """Random points plus points 1e-12 from the singular lines of D_m and S_mn."""
    x, y = RNG.uniform(-np.pi, np.pi, (2, count))
    q = count // 4
    y[:q] = 1e-12 * RNG.choice([-1, 1], q)
    j = RNG.integers(-1, 2, q)
    x[q:2 * q] = 2 * np.pi * j - n * y[q:2 * q] / m + 1e-12
    x[2 * q:3 * q] = 2 * np.pi * j + n * y[2 * q:3 * q] / m - 1e-12
    return x, y


@pytest.mark.parametrize("mn", [(3, 5), (8, 13)])
def test_stress_grid_finite(mn):
    m, n = mn
    x, y = stress_points(m, n, 10**6)
    for name in ("dirichlet", "rhombus", "s", "f", "delta", "phi", "boundary"):
        if name == "dirichlet":
            vals = [K.dirichlet_ratio(m, x), K.dirichlet_ratio(m, x - y)]
        elif name == "rhombus":
            vals = [K.dirichlet_rhombus(m, n, x, y)]
        elif name == "s":
            vals = [K.s_kernel(m, n, x, y), K.s_kernel_expanded(m, n, x[:1000], y[:1000])]
        elif name == "f":
            vals = [K.f_kernel(m, n, x, y, v) for v in K.F_VARIANTS]
        elif name == "delta":
            vals = list(K.delta_kernels(m, x, y))
        elif name == "phi":
            vals = [K.phi_factor(m, n, x, y)]
        else:
            vals = [K.boundary_kernel(m, n, x, y)]
        for v in vals:
            assert np.all(np.isfinite(v)), name
    # near-singular S values stay close to their smooth limit
    q = 10**6 // 4
    np.testing.assert_allclose(K.s_kernel(m, n, x[:q], y[:q]),
                               2 * (n / m) * K.dirichlet_ratio(m, x[:q]) ** 2, rtol=1e-6, atol=1e-6)
    xr, yr = x[::1000], y[::1000]
    r, _ = K.r_kernel(m, n, xr, yr, K.TruncationSpec(50))
    assert np.all(np.isfinite(r))
