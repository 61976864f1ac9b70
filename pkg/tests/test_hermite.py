import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mathieu_edge.errors import DegenerateVectorError, ParameterError
from mathieu_edge.hermite import (
    coefficients,
    evaluate,
    factorial_coefficient,
    sample_periodic,
    sign_change_regime,
    sign_changes,
    wrap_periodic,
)


def hermite_reference(m, y):
    """Physicists' Hermite polynomial from its explicit sum."""
    return sum(
        (-1) ** k * math.factorial(m) / (math.factorial(k) * math.factorial(m - 2 * k)) * (2 * y) ** (m - 2 * k)
        for k in range(m // 2 + 1)
    )


def test_coefficient_examples():
    np.testing.assert_array_equal(coefficients(0).values, [1.0])
    np.testing.assert_array_equal(coefficients(2).values, [-2.0, 8.0])
    np.testing.assert_array_equal(coefficients(4).values, [12.0, -96.0, 64.0])


def test_exact_coefficients_are_integers_for_even_m():
    for m in range(0, 9, 2):
        exact = coefficients(m, exact=True).values
        for l, c in enumerate(exact):
            assert isinstance(c, Fraction) and c.denominator == 1
            assert c == round(factorial_coefficient(m, l))


def test_odd_seed_carries_two_sqrt2():
    assert coefficients(1).values[0] == pytest.approx(2 * math.sqrt(2), rel=1e-15)
    assert coefficients(3).values[0] == pytest.approx(-6 * 2 * math.sqrt(2), rel=1e-15)


@pytest.mark.parametrize("m", range(13))
def test_recurrence_matches_factorial_formula(m):
    c = coefficients(m).values
    ref = np.array([factorial_coefficient(m, l) for l in range(len(c))])
    np.testing.assert_allclose(c, ref, rtol=1e-12)


def test_negative_order_rejected():
    with pytest.raises(ParameterError):
        coefficients(-1)


def test_evaluate_examples():
    x = np.linspace(-30, 30, 61)
    np.testing.assert_allclose(evaluate(0, 0.02, x), np.exp(-0.02 * x * x), rtol=1e-14)
    assert evaluate(1, 0.3, 0.0) == 0.0
    assert abs(evaluate(2, 0.01, 5.0)) < 1e-14
    with pytest.raises(ParameterError):
        evaluate(1, 0.0, 1.0)


@given(st.integers(0, 14), st.floats(1e-3, 0.5), st.floats(-40, 40))
def test_evaluate_matches_hermite_polynomial(m, gamma, x):
    y = math.sqrt(2 * gamma) * x
    ref = hermite_reference(m, y) * math.exp(-gamma * x * x)
    scale = max(1.0, math.factorial(m) / math.factorial(m // 2) * 2 ** (m / 2) * (1 + abs(y)) ** m * math.exp(-gamma * x * x))
    assert abs(evaluate(m, gamma, x) - ref) <= 1e-11 * scale
    assert abs(evaluate(m, gamma, x, method="coefficients") - ref) <= 1e-10 * scale


@given(st.integers(0, 20), st.floats(1e-3, 0.5), st.floats(0, 50))
def test_parity(m, gamma, x):
    a, b = evaluate(m, gamma, x), evaluate(m, gamma, -x)
    assert abs(b - (-1) ** m * a) <= 1e-12 * max(1.0, abs(a))


def test_sample_examples():
    g = sample_periodic(0, 0.05, 32)
    assert np.argmax(g.samples) == 16 and g.x[16] == 0
    alt = sample_periodic(0, 0.05, 32, modulated=True)
    np.testing.assert_allclose(np.abs(alt.samples), g.samples)
    assert sign_changes(alt.samples) == 31
    assert sign_changes(sample_periodic(2, 0.01, 64).samples) == 2
    assert sign_changes(sample_periodic(3, 0.01, 200).samples) == 3


def test_sample_is_read_only_and_normalizable():
    v = sample_periodic(3, 0.05, 40)
    with pytest.raises(ValueError):
        v.samples[0] = 1.0
    assert np.linalg.norm(v.normalized()) == pytest.approx(1.0)


def test_sample_rejects_bad_order_and_n():
    with pytest.raises(ParameterError):
        sample_periodic(8, 0.1, 8)
    with pytest.raises(ParameterError):
        sample_periodic(0, 0.1, 7)


def test_wrap_periodic_range():
    y = wrap_periodic(np.array([-5.0, -4.0, 3.9, 4.0, 12.5]), 8)
    np.testing.assert_allclose(y, [3.0, -4.0, 3.9, -4.0, -3.5])


def test_shift_without_wrap_is_literal():
    v = sample_periodic(1, 0.02, 16, shift=2.5, wrap=False)
    np.testing.assert_allclose(v.samples, evaluate(1, 0.02, v.x + 2.5))


def test_sign_changes_examples():
    assert sign_changes([1, 2, 3]) == 0
    assert sign_changes([1, -1, 1]) == 2
    assert sign_changes([1, 0, 1]) == 0
    assert sign_changes([1, 1e-20, -1]) == 1
    with pytest.raises(DegenerateVectorError):
        sign_changes([0.0, 0.0])
    with pytest.raises(DegenerateVectorError):
        sign_changes([1e-3, -1e-3], zero_tol=1.0)


def test_sign_change_regime_examples():
    r = sign_change_regime(0, 0.01, 256, 0.5)
    assert r.min_zero_spacing == pytest.approx(math.pi / math.sqrt(0.02))
    gamma = 1 / math.sqrt(256)
    assert sign_change_regime(14, gamma, 256, 0.5).regime_ok
    assert not sign_change_regime(15, gamma, 256, 0.5).regime_ok
    r = sign_change_regime(3, math.pi / 10000, 10000, 0.5)
    assert r.regime_ok
    assert r.roots_interval_radius == pytest.approx(math.sqrt(4 / (math.pi / 10000)))


@given(st.integers(0, 10), st.integers(6, 9).map(lambda k: 2**k), st.floats(0, 1))
def test_zero_count_in_regime(m, n, t):
    eps = 0.5
    lo, hi = 4.0 / n ** (2 - eps), n**-eps
    gamma = lo + t * (hi - lo)
    reg = sign_change_regime(m, gamma, n, eps)
    if not reg.regime_ok:
        return
    assert sign_changes(sample_periodic(m, gamma, n).samples) == m


@given(st.integers(0, 8), st.floats(0.005, 0.3))
def test_decay_beyond_root_interval(m, gamma):
    r = 2 * math.sqrt((m + 1) / gamma)
    x = np.arange(math.ceil(r), math.ceil(r) + 40, dtype=float)
    a = np.abs(evaluate(m, gamma, x))
    a = a[a > 1e-280]
    assert np.all(a[1:] < a[:-1])


@given(st.integers(2, 40).map(lambda k: 2 * k), st.integers(0, 2**31))
def test_modulation_flips_sign_count(n, seed):
    v = np.random.default_rng(seed).standard_normal(n)
    v[np.abs(v) < 1e-3] = 1.0
    k = sign_changes(v)
    x = np.arange(n) - n // 2
    assert sign_changes(np.where(x % 2 == 0, v, -v)) == n - 1 - k
