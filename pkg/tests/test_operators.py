import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mathieu_edge import (
    DimensionError,
    OperatorParams,
    ParameterError,
    SymTridiagonal,
    WindowError,
    WindowedVector,
    apply,
    apply_infinite,
    build_finite,
    build_periodic,
)
from mathieu_edge.operators import PeriodicOperator, potential

alphas = st.one_of(
    st.floats(min_value=-0.5, max_value=0.49, allow_nan=False),
    st.builds(Fraction, st.integers(1, 20), st.integers(41, 400)),
)
params_st = st.builds(
    OperatorParams,
    alpha=alphas,
    beta=st.floats(min_value=0.05, max_value=5.0),
    theta=st.floats(min_value=0.0, max_value=2 * math.pi),
    n=st.integers(2, 40).map(lambda k: 2 * k),
)


def test_constant_diagonal():
    T = build_finite(OperatorParams(0.0, 1.0, 0.0, 4))
    np.testing.assert_array_equal(T.diag, [2, 2, 2, 2])
    np.testing.assert_array_equal(T.offdiag, [1, 1, 1])


def test_quarter_phase_kills_diagonal():
    T = build_finite(OperatorParams(0.0, 1.0, math.pi / 2, 4))
    np.testing.assert_allclose(T.diag, 0.0, atol=1e-15)


def test_quarter_frequency_diagonal():
    T = build_finite(OperatorParams(Fraction(1, 4), 1.0, 0.0, 4))
    np.testing.assert_allclose(T.diag, [-2, 0, 2, 0], atol=1e-15)


def test_periodic_row_sums_and_corners():
    P = build_periodic(OperatorParams(Fraction(1, 4), 1.0, 0.0, 4))
    A = P.to_dense()
    np.testing.assert_allclose(A.sum(axis=1), [0, 2, 4, 2], atol=1e-14)
    assert A[0, 3] == 1.0 and A[3, 0] == 1.0
    np.testing.assert_array_equal(A, A.T)


@pytest.mark.parametrize(
    "kw", [dict(n=5), dict(n=2), dict(beta=0.0), dict(beta=-1.0), dict(alpha=0.5), dict(theta=math.inf)]
)
def test_invalid_params(kw):
    base = dict(alpha=0.1, beta=1.0, theta=0.0, n=8)
    base.update(kw)
    with pytest.raises(ParameterError):
        OperatorParams(**base)


def test_apply_examples():
    d = np.array([1.0, -2.0, 3.0])
    np.testing.assert_array_equal(apply(SymTridiagonal(d, [0, 0]), [1, 1, 2]), [1, -2, 6])
    free = SymTridiagonal(np.zeros(3), np.ones(2))
    np.testing.assert_array_equal(apply(free, [1, 0, 0]), [0, 1, 0])
    ring = PeriodicOperator(SymTridiagonal(np.zeros(4), np.ones(3)))
    np.testing.assert_array_equal(apply(ring, [1, 0, 0, 0]), [0, 1, 0, 1])


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply(build_finite(OperatorParams(0.1, 1.0, 0.0, 8)), np.ones(7))
    with pytest.raises(DimensionError):
        SymTridiagonal(np.ones(3), np.ones(3))


def test_apply_complex_and_dense():
    p = OperatorParams(0.13, 1.3, 0.2, 10)
    P = build_periodic(p)
    rng = np.random.default_rng(1)
    v = rng.standard_normal(10) + 1j * rng.standard_normal(10)
    np.testing.assert_allclose(apply(P, v), P.to_dense() @ v, atol=1e-14)
    np.testing.assert_allclose(apply(P.to_dense(), v), P.to_dense() @ v, atol=1e-14)


def test_operators_are_immutable():
    T = build_finite(OperatorParams(0.1, 1.0, 0.0, 8))
    with pytest.raises(ValueError):
        T.diag[0] = 5.0


def test_apply_infinite_examples():
    p = OperatorParams(0.0, 1.0, 0.0, 4)
    out = apply_infinite(p, WindowedVector(-5, np.ones(11)))
    assert out.x_lo == -4 and out.x_hi == 4
    np.testing.assert_allclose(out.values, 4.0)
    theta = 0.7
    q = OperatorParams(0.21, 1.7, theta, 4)
    out = apply_infinite(q, WindowedVector(-2, np.array([0, 0, 1.0, 0, 0])))
    np.testing.assert_allclose(out.values, [1, 2 * 1.7 * math.cos(theta), 1], atol=1e-15)
    with pytest.raises(WindowError):
        apply_infinite(p, WindowedVector(0, np.ones(2)))


def test_rational_alpha_reduced_exactly_for_large_sites():
    p = OperatorParams(Fraction(1, 3), 1.0, 0.0, 4)
    k = np.array([0, 3, 3 * 10**12, 3 * 10**12 + 1])
    v = potential(p, k)
    np.testing.assert_allclose(v[:3], 2.0, atol=1e-15)
    np.testing.assert_allclose(v[3], 2 * math.cos(2 * math.pi / 3), atol=1e-15)


@given(params_st, st.integers(0, 2**31))
def test_symmetry_of_both_operators(p, seed):
    rng = np.random.default_rng(seed)
    v, w = rng.standard_normal((2, p.n))
    for op in (build_finite(p), build_periodic(p)):
        assert abs(apply(op, v) @ w - v @ apply(op, w)) <= 1e-12 * (1 + np.abs(v).sum() * np.abs(w).sum())


@given(params_st, st.integers(0, 2**31))
def test_finite_and_periodic_agree_in_interior(p, seed):
    v = np.random.default_rng(seed).standard_normal(p.n)
    np.testing.assert_array_equal(apply(build_finite(p), v)[1:-1], apply(build_periodic(p), v)[1:-1])


@given(params_st)
def test_gershgorin_contains_spectrum(p):
    w = np.linalg.eigvalsh(build_finite(p).to_dense())
    bound = 2 + 2 * p.beta
    assert w.min() >= -bound - 1e-12 and w.max() <= bound + 1e-12


@given(params_st)
def test_diagonal_is_2pi_periodic_in_theta(p):
    q = OperatorParams(p.alpha, p.beta, p.theta + 2 * math.pi, p.n)
    np.testing.assert_allclose(build_finite(p).diag, build_finite(q).diag, atol=1e-12)


@given(params_st)
def test_gamma_derived_from_alpha_beta(p):
    assert p.gamma == pytest.approx(math.pi * float(p.alpha) * math.sqrt(p.beta), rel=1e-15)
    assert p.with_n(p.n + 2).gamma == p.gamma


@given(params_st, st.integers(0, 2**31))
def test_infinite_application_matches_periodic_interior(p, seed):
    # on the window's interior the operator on Z and any truncation coincide
    v = np.random.default_rng(seed).standard_normal(p.n)
    out = apply_infinite(p, WindowedVector(-p.n // 2, v))
    np.testing.assert_allclose(out.values, apply(build_finite(p), v)[1:-1], atol=1e-13)
