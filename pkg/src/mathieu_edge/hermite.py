"""Scaled discrete Hermite functions.

With ``y = sqrt(2 gamma) x`` the scaled Hermite function of order ``m`` is

    phi_m(x) = exp(-gamma x^2) H_m(y),

where ``H_m`` is the physicists' Hermite polynomial.  Written out in powers of
``x`` the even case reads ``exp(-gamma x^2) sum_l gamma^l c[m,l] x^(2l)`` and
the odd case ``exp(-gamma x^2) sum_l gamma^(l+1/2) c[m,l] x^(2l+1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DegenerateVectorError, ParameterError

TWO_SQRT2 = 2.0 * math.sqrt(2.0)


@dataclass(frozen=True)
class HermiteCoefficients:
    m: int
    values: np.ndarray

    @property
    def parity(self) -> int:
        return self.m % 2


def factorial_coefficient(m: int, l: int) -> float:
    """``c[m,l]`` straight from the closed factorial form."""
    if m % 2 == 0:
        h = m // 2
        sign = -1 if (h - l) % 2 else 1
        return sign * math.factorial(m) * 8**l / (math.factorial(2 * l) * math.factorial(h - l))
    h = (m - 1) // 2
    sign = -1 if (h - l) % 2 else 1
    return (
        sign * math.factorial(m) * 8**l * TWO_SQRT2
        / (math.factorial(2 * l + 1) * math.factorial(h - l))
    )


def _recurrence(m: int, seed, one):
    # even: c[l] = 4 (2l - 2 - m) / (2l (2l - 1)) c[l-1]
    # odd:  c[l] = 4 (2l - 1 - m) / (2l (2l + 1)) c[l-1]
    vals = [seed]
    for l in range(1, m // 2 + 1):
        if m % 2 == 0:
            ratio = one * 4 * (2 * l - 2 - m) / (2 * l * (2 * l - 1))
        else:
            ratio = one * 4 * (2 * l - 1 - m) / (2 * l * (2 * l + 1))
        vals.append(vals[-1] * ratio)
    return vals


def _seed_exact(m: int) -> Fraction:
    h = m // 2
    sign = -1 if h % 2 else 1
    return Fraction(sign * math.factorial(m), math.factorial(h))


@lru_cache(maxsize=256)
def _coefficients_cached(m: int) -> tuple:
    seed = float(_seed_exact(m))
    if m % 2:
        seed *= TWO_SQRT2
    return tuple(_recurrence(m, seed, 1.0))


def coefficients(m: int, exact: bool = False) -> HermiteCoefficients:
    """Coefficients ``c[m,l]`` seeded at ``l = 0`` and advanced by the ratio recurrence.

    With ``exact=True`` the recurrence runs in rational arithmetic and the
    values are returned as :class:`~fractions.Fraction`.  For odd ``m`` every
    coefficient carries the irrational factor ``2 sqrt(2)``; the exact values
    are returned with that factor divided out.
    """
    if m < 0 or int(m) != m:
        raise ParameterError(f"order must be a nonnegative integer, got {m}")
    m = int(m)
    if exact:
        vals = _recurrence(m, _seed_exact(m), Fraction(1))
        return HermiteCoefficients(m, np.array(vals, dtype=object))
    return HermiteCoefficients(m, np.array(_coefficients_cached(m)))


def evaluate(m: int, gamma: float, x, method: str = "recurrence"):
    """Value of ``phi_m`` at real point(s) ``x``.

    ``method="recurrence"`` runs the three-term Hermite recurrence with the
    Gaussian folded into the starting value, which stays accurate for large
    ``m``; ``method="coefficients"`` sums the power series in ``gamma x^2``.
    """
    if gamma <= 0:
        raise ParameterError(f"gamma must be positive, got {gamma}")
    if m < 0:
        raise ParameterError(f"order must be nonnegative, got {m}")
    x = np.asarray(x, dtype=float)
    if method == "coefficients":
        c = coefficients(m).values
        u = gamma * x * x
        poly = np.zeros_like(x)
        for cl in c[::-1]:
            poly = poly * u + cl
        if m % 2:
            poly = poly * math.sqrt(gamma) * x
        out = np.exp(-u) * poly
    elif method == "recurrence":
        y = math.sqrt(2.0 * gamma) * x
        prev = np.exp(-0.5 * y * y)
        if m == 0:
            out = prev
        else:
            cur = 2.0 * y * prev
            for k in range(1, m):
                prev, cur = cur, 2.0 * y * cur - 2.0 * k * prev
            out = cur
    else:
        raise ParameterError(f"unknown method {method!r}")
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class HermiteVector:
    """Sampled ``phi_m`` on the sites ``x = -n/2, ..., n/2 - 1``.

    ``samples[j] = (-1)^(x_j) phi_m(wrap(x_j + shift))`` when ``modulated``,
    without the sign factor otherwise.  ``wrap`` maps the argument to its
    periodic representative in ``[-n/2, n/2)``.
    """

    m: int
    gamma: float
    n: int
    shift: float
    samples: np.ndarray
    modulated: bool = False
    wrapped: bool = True
    warnings: tuple = field(default=())

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n) - self.n // 2

    def normalized(self) -> np.ndarray:
        return self.samples / np.linalg.norm(self.samples)


def wrap_periodic(y, n: int):
    """Representative of ``y`` modulo ``n`` in ``[-n/2, n/2)``."""
    return np.mod(np.asarray(y, dtype=float) + n / 2, n) - n / 2


def sample_periodic(
    m: int,
    gamma: float,
    n: int,
    shift: float = 0.0,
    modulated: bool = False,
    wrap: bool = True,
) -> HermiteVector:
    if n < 2 or n % 2:
        raise ParameterError(f"n must be even and positive, got {n}")
    if not 0 <= m < n:
        raise ParameterError(f"order m={m} must satisfy 0 <= m < n={n}")
    x = np.arange(n) - n // 2
    arg = x + shift
    if wrap:
        arg = wrap_periodic(arg, n)
    vals = np.asarray(evaluate(m, gamma, arg), dtype=float)
    if modulated:
        vals = np.where(x % 2 == 0, vals, -vals)
    if not np.all(np.isfinite(vals)) or not np.any(vals):
        raise DegenerateVectorError("sampled Hermite function is zero or not finite")
    vals.setflags(write=False)
    return HermiteVector(m, gamma, n, float(shift), vals, bool(modulated), bool(wrap))


def sign_changes(v, zero_tol: float | None = None) -> int:
    """Number of sign flips between consecutive retained entries of ``v``.

    Entries with ``|v_i| <= zero_tol`` are skipped; the default tolerance is
    ``1e-12 * max|v|``.
    """
    v = np.asarray(v)
    if np.iscomplexobj(v):
        if np.any(np.abs(v.imag) > 1e-12 * max(np.max(np.abs(v)), 1e-300)):
            raise ParameterError("sign changes are defined for real vectors only")
        v = v.real
    v = v.astype(float)
    if v.ndim != 1 or len(v) < 2:
        raise ParameterError("need a vector with at least two entries")
    if zero_tol is None:
        zero_tol = 1e-12 * float(np.max(np.abs(v)))
    kept = v[np.abs(v) > zero_tol]
    if len(kept) == 0:
        raise DegenerateVectorError("all entries are below the zero tolerance")
    s = np.sign(kept)
    return int(np.count_nonzero(s[1:] != s[:-1]))


@dataclass(frozen=True)
class SignChangeRegime:
    roots_interval_radius: float
    min_zero_spacing: float
    lower_gamma_ok: bool
    upper_gamma_ok: bool
    order_ok: bool

    @property
    def regime_ok(self) -> bool:
        return self.lower_gamma_ok and self.upper_gamma_ok and self.order_ok


def sign_change_regime(m: int, gamma: float, n: int, epsilon: float) -> SignChangeRegime:
    """Bounds that guarantee ``phi_{m,n}`` has exactly ``m`` sign changes.

    Zeros lie within ``+-sqrt((m+1)/gamma)`` and are at least
    ``pi / sqrt(2 gamma (2m+1))`` apart.  The regime requires
    ``4/n^(2-eps) <= gamma <= n^(-eps)`` and ``m < n^eps - 1``.
    """
    if gamma <= 0:
        raise ParameterError(f"gamma must be positive, got {gamma}")
    radius = math.sqrt((m + 1) / gamma)
    spacing = math.pi / math.sqrt(2.0 * gamma * (2 * m + 1))
    return SignChangeRegime(
        roots_interval_radius=radius,
        min_zero_spacing=spacing,
        lower_gamma_ok=4.0 / n ** (2.0 - epsilon) <= gamma,
        upper_gamma_ok=gamma <= n ** (-epsilon),
        order_ok=m < n**epsilon - 1,
    )
