from math import comb, pi

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kahlerkit.projective import (
    ChartPoint,
    LineBundleClass,
    chern_curvature_check,
    cocycle_eval,
    cw_homology_pn,
    divisor_class,
    dual,
    fs_checks,
    fs_integral_p1,
    fs_integral_p1_fixed,
    fubini_study_matrix,
    h0_dim,
    hard_lefschetz_ring,
    homogeneous_monomials,
    o1_metric,
    random_chart_points,
    tensor,
)


def test_tensor_and_dual():
    assert tensor(LineBundleClass(2, 2), LineBundleClass(2, 3)) == LineBundleClass(2, 5)
    assert LineBundleClass(3, 4) @ LineBundleClass(3, -4) == LineBundleClass(3, 0)
    assert dual(LineBundleClass(1, -1)) == LineBundleClass(1, 1)
    with pytest.raises(ValueError):
        tensor(LineBundleClass(1, 1), LineBundleClass(2, 1))


def test_h0_examples():
    assert h0_dim(1, 2) == 3
    assert h0_dim(2, -1) == 0
    assert h0_dim(3, 2) == 10
    assert h0_dim(4, 0) == 1


@pytest.mark.parametrize("n", range(1, 5))
def test_h0_counts_monomials(n):
    for k in range(-3, 11):
        assert h0_dim(n, k) == len(homogeneous_monomials(n, k))
        if k >= 0:
            assert h0_dim(n, k + 1) - h0_dim(n, k) == comb(n + k, n - 1)


def test_divisor_class():
    assert divisor_class(3, [(1, 1)]) == LineBundleClass(3, 1)
    assert divisor_class(3, []) == LineBundleClass(3, 0)
    assert divisor_class(2, [(2, 2), (3, -1)]) == LineBundleClass(2, 1)


def test_cw_homology():
    assert cw_homology_pn(0) == [(1, [])]
    assert cw_homology_pn(1) == [(1, []), (0, []), (1, [])]
    assert cw_homology_pn(2) == [(1, []), (0, []), (1, []), (0, []), (1, [])]


@pytest.mark.parametrize("n", range(1, 6))
def test_hard_lefschetz_ring(n):
    assert all(hard_lefschetz_ring(n, k) for k in range(n + 1))


def test_fs_matrix_examples():
    assert np.allclose(fubini_study_matrix(ChartPoint(0, (0, 0, 0))), np.eye(3) / pi, atol=1e-15)
    assert abs(fubini_study_matrix(ChartPoint(0, (1,)))[0, 0] - 1 / (4 * pi)) < 1e-15


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                                                    min_size=n, max_size=n)))
def test_fs_matrix_hermitian_positive_and_symmetric(w):
    p = ChartPoint(0, tuple(w))
    h = fubini_study_matrix(p)
    assert np.allclose(h, h.conj().T, atol=1e-14)
    assert np.all(np.linalg.eigvalsh(h) > 0)
    perm = list(reversed(range(len(w))))
    hp = fubini_study_matrix(ChartPoint(0, tuple(w[i] for i in perm)))
    assert np.allclose(hp, h[np.ix_(perm, perm)], atol=1e-14)


def test_fs_matrix_is_chart_independent():
    # the same point seen from two charts: h transforms as a (1,1)-tensor
    p = ChartPoint(0, (0.3 + 0.1j, -0.4j))
    q = p.to_chart(1)
    # w' = (1/w1, w2/w1) with w = (w1, w2); Jacobian dw'/dw
    w1, w2 = p.w
    J = np.array([[-1 / w1**2, 0], [-w2 / w1**2, 1 / w1]])
    h_p = fubini_study_matrix(p)
    h_q = fubini_study_matrix(q)
    assert np.allclose(J.T @ h_q @ J.conj(), h_p, atol=1e-12)


def test_fs_checks():
    rep = fs_checks(ChartPoint(0, (0, 0)))
    assert rep.passed
    for p in random_chart_points(2, 30, np.random.default_rng(5)):
        assert fs_checks(p, 1e-4, 1e-5).passed
    w = (0.2 + 0.3j, -0.5 + 0.1j)
    a = fs_checks(ChartPoint(0, w))
    b = fs_checks(ChartPoint(0, w[::-1]))
    assert np.allclose(a.eigenvalues, b.eigenvalues)


def test_fs_integral():
    assert abs(fs_integral_p1(1e-9) - 1) < 1e-6
    for R in (0.5, 1.0, 3.0):
        assert abs(fs_integral_p1(1e-12, radius=R) - (1 - 1 / (1 + R * R))) < 1e-10
    errs = [abs(fs_integral_p1_fixed(k) - 1) for k in (1, 2, 4, 8, 16)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_o1_metric():
    assert o1_metric(ChartPoint(0, (0, 0))) == 1
    assert abs(o1_metric(ChartPoint(0, (1,))) - 0.5) < 1e-15


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), st.integers(-5, 5), st.integers(0, 2**32 - 1))
def test_cocycles_and_metric_transition(n, k, seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
    p = ChartPoint.from_homogeneous(z, 0)
    E = LineBundleClass(n, k)
    E1 = LineBundleClass(n, 1)
    for i in range(n + 1):
        assert cocycle_eval(E, i, i, p) == 1
        for j in range(n + 1):
            assert abs(cocycle_eval(E, i, j, p) * cocycle_eval(E, j, i, p) - 1) < 1e-9
            h_i, h_j = o1_metric(p, i), o1_metric(p, j)
            assert abs(h_j - abs(cocycle_eval(E1, i, j, p)) ** 2 * h_i) < 1e-12 * max(1, h_j)
            for l in range(n + 1):
                prod = cocycle_eval(E, i, j, p) * cocycle_eval(E, j, l, p) * cocycle_eval(E, l, i, p)
                assert abs(prod - 1) < 1e-9
    assert cocycle_eval(LineBundleClass(n, 0), 0, n, p) == 1


def test_cocycle_outside_overlap():
    p = ChartPoint(0, (0.0, 1.0))
    with pytest.raises(ValueError):
        cocycle_eval(LineBundleClass(2, 1), 0, 1, p)


def test_curvature_at_origin():
    assert chern_curvature_check(ChartPoint(0, (0, 0)), 1e-4, 1e-6).passed
    assert chern_curvature_check(ChartPoint(2, (0, 0, 0)), 1e-4, 1e-6).passed


@pytest.mark.parametrize("n", [1, 2, 3])
def test_curvature_random(n):
    for p in random_chart_points(n, 30, np.random.default_rng(n)):
        assert chern_curvature_check(p, 1e-4, 1e-4).passed
        assert chern_curvature_check(p, 1e-4, 1e-4, twist=3).passed


def test_chart_point_roundtrip():
    p = ChartPoint(1, (0.3 + 0.2j, -0.5j, 0.7))
    q = p.to_chart(2).to_chart(1)
    assert np.allclose(q.w, p.w)
    assert not ChartPoint(0, (0.0, 1.0)).in_chart(1)
    with pytest.raises(ValueError):
        ChartPoint(0, (float("nan"),))
