"""Finite and windowed almost Mathieu operators.

The operator acts on sequences indexed by lattice sites ``k`` as

    (H f)(k) = f(k + 1) + f(k - 1) + 2 beta cos(2 pi alpha k + theta) f(k).

Finite truncations of length ``n`` use the sites ``k = -n/2, ..., n/2 - 1``;
row ``j`` of every matrix corresponds to site ``k = -n/2 + j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Union

import numpy as np

from .errors import DimensionError, ParameterError, WindowError

Alpha = Union[float, Fraction]


@dataclass(frozen=True)
class OperatorParams:
    """Parameter tuple ``(alpha, beta, theta, n)``.

    ``alpha`` may be a :class:`fractions.Fraction`; the diagonal is then
    evaluated with the phase ``alpha * k`` reduced modulo 1 exactly.
    """

    alpha: Alpha
    beta: float
    theta: float = 0.0
    n: int = 64

    def __post_init__(self):
        if isinstance(self.alpha, Rational):
            object.__setattr__(self, "alpha", Fraction(self.alpha))
        else:
            object.__setattr__(self, "alpha", float(self.alpha))
        a = float(self.alpha)
        if not math.isfinite(a) or not (-0.5 <= a < 0.5):
            raise ParameterError(f"alpha must lie in [-1/2, 1/2), got {self.alpha}")
        if not math.isfinite(self.beta) or self.beta <= 0:
            raise ParameterError(f"beta must be positive, got {self.beta}")
        if not math.isfinite(self.theta):
            raise ParameterError(f"theta must be finite, got {self.theta}")
        if isinstance(self.n, bool) or int(self.n) != self.n:
            raise ParameterError(f"n must be an integer, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        if self.n < 4 or self.n % 2:
            raise ParameterError(f"n must be even and >= 4, got {self.n}")

    @property
    def gamma(self) -> float:
        return math.pi * float(self.alpha) * math.sqrt(self.beta)

    @property
    def alpha_is_exact(self) -> bool:
        return isinstance(self.alpha, Fraction)

    def with_n(self, n: int) -> "OperatorParams":
        return OperatorParams(self.alpha, self.beta, self.theta, n)

    def sites(self) -> np.ndarray:
        return lattice_sites(self.n)


def lattice_sites(n: int) -> np.ndarray:
    """Sites ``-n/2, ..., n/2 - 1`` of a length-``n`` window."""
    return np.arange(n, dtype=np.int64) - n // 2


def potential(params: OperatorParams, k) -> np.ndarray:
    """``2 beta cos(2 pi alpha k + theta)`` at integer sites ``k``."""
    k = np.asarray(k, dtype=np.int64)
    if isinstance(params.alpha, Fraction):
        p, q = params.alpha.numerator, params.alpha.denominator
        # exact reduction of alpha*k mod 1 keeps cos arguments small for large k
        phase = np.mod(p * k, q) / q
        arg = 2.0 * np.pi * phase + params.theta
    else:
        arg = 2.0 * np.pi * params.alpha * k + params.theta
    return 2.0 * params.beta * np.cos(arg)


def _readonly(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SymTridiagonal:
    """Symmetric tridiagonal matrix stored as its diagonal and off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray = field(default=None)

    def __post_init__(self):
        d = _readonly(np.atleast_1d(self.diag))
        if d.ndim != 1 or len(d) == 0:
            raise DimensionError("diag must be a nonempty one-dimensional array")
        e = np.zeros(len(d) - 1) if self.offdiag is None else self.offdiag
        e = _readonly(np.asarray(e, dtype=float).reshape(-1))
        if len(e) != len(d) - 1:
            raise DimensionError(
                f"offdiag length {len(e)} inconsistent with diag length {len(d)}"
            )
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return len(self.diag)

    def apply(self, v) -> np.ndarray:
        v = _check_vector(v, self.n)
        out = self.diag * v
        if self.n > 1:
            out[1:] += self.offdiag * v[:-1]
            out[:-1] += self.offdiag * v[1:]
        return out

    def to_dense(self) -> np.ndarray:
        a = np.diag(self.diag)
        if self.n > 1:
            idx = np.arange(self.n - 1)
            a[idx, idx + 1] = self.offdiag
            a[idx + 1, idx] = self.offdiag
        return a

    def gershgorin(self) -> tuple[float, float]:
        radius = np.zeros(self.n)
        if self.n > 1:
            radius[1:] += np.abs(self.offdiag)
            radius[:-1] += np.abs(self.offdiag)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def norm_inf(self) -> float:
        lo, hi = self.gershgorin()
        return max(abs(lo), abs(hi), float(np.max(np.abs(self.diag))))


@dataclass(frozen=True)
class PeriodicOperator:
    """Tridiagonal body plus symmetric corner coupling between sites 0 and n-1."""

    tridiag: SymTridiagonal
    corner: float = 1.0

    def __post_init__(self):
        if self.tridiag.n < 3:
            raise DimensionError("periodic operator needs n >= 3")

    @property
    def n(self) -> int:
        return self.tridiag.n

    @property
    def diag(self) -> np.ndarray:
        return self.tridiag.diag

    def apply(self, v) -> np.ndarray:
        out = self.tridiag.apply(v)
        v = np.asarray(v)
        out[0] += self.corner * v[-1]
        out[-1] += self.corner * v[0]
        return out

    def to_dense(self) -> np.ndarray:
        a = self.tridiag.to_dense()
        a[0, -1] += self.corner
        a[-1, 0] += self.corner
        return a

    def gershgorin(self) -> tuple[float, float]:
        t = self.tridiag
        radius = np.zeros(t.n)
        radius[1:] += np.abs(t.offdiag)
        radius[:-1] += np.abs(t.offdiag)
        radius[0] += abs(self.corner)
        radius[-1] += abs(self.corner)
        return float(np.min(t.diag - radius)), float(np.max(t.diag + radius))

    def norm_inf(self) -> float:
        lo, hi = self.gershgorin()
        return max(abs(lo), abs(hi))


def _check_vector(v, n: int) -> np.ndarray:
    v = np.asarray(v)
    if v.ndim != 1 or len(v) != n:
        raise DimensionError(f"expected a vector of length {n}, got shape {v.shape}")
    if not np.iscomplexobj(v):
        v = v.astype(float, copy=False)
    return v


def build_finite(params: OperatorParams) -> SymTridiagonal:
    """Open-boundary truncation ``H^(n)``."""
    n = params.n
    return SymTridiagonal(potential(params, lattice_sites(n)), np.ones(n - 1))


def build_periodic(params: OperatorParams) -> PeriodicOperator:
    """Periodic truncation ``P^(n)`` (corner couplings equal to 1)."""
    return PeriodicOperator(build_finite(params), 1.0)


def apply(op, v) -> np.ndarray:
    """``op @ v`` for a tridiagonal, periodic, or dense symmetric operator."""
    if isinstance(op, (SymTridiagonal, PeriodicOperator)):
        return op.apply(v)
    a = np.asarray(op)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("dense operator must be square")
    return a @ _check_vector(v, a.shape[0])


@dataclass(frozen=True)
class WindowedVector:
    """Finite piece of a sequence on Z, supported on sites ``x_lo .. x_hi``."""

    x_lo: int
    values: np.ndarray

    @property
    def x_hi(self) -> int:
        return self.x_lo + len(self.values) - 1

    @property
    def sites(self) -> np.ndarray:
        return np.arange(self.x_lo, self.x_hi + 1, dtype=np.int64)


def apply_infinite(params: OperatorParams, v: WindowedVector) -> WindowedVector:
    """Apply the operator on Z to a windowed sequence.

    The result is exact on the interior sites ``x_lo+1 .. x_hi-1``; no value is
    assumed outside the window, so the window shrinks by one site per side.
    ``params.n`` is ignored.
    """
    vals = np.asarray(v.values)
    if vals.ndim != 1 or len(vals) < 3:
        raise WindowError("window must contain at least 3 sites")
    inner = np.arange(v.x_lo + 1, v.x_hi, dtype=np.int64)
    out = vals[2:] + vals[:-2] + potential(params, inner) * vals[1:-1]
    return WindowedVector(v.x_lo + 1, out)
