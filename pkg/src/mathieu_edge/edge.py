"""Closed-form approximate eigenpairs at both spectral edges and related checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .eigensolver import Residual, dense_eig_small
from .errors import (
    DimensionError,
    NotRepresentableError,
    OracleSizeError,
    ParameterError,
    WindowError,
)
from .hermite import HermiteVector, evaluate, sample_periodic, sign_change_regime
from .operators import OperatorParams, WindowedVector, apply_infinite, build_periodic

EDGES = ("positive", "negative")


def _check_edge(edge: str) -> None:
    if edge not in EDGES:
        raise ParameterError(f"edge must be one of {EDGES}, got {edge!r}")


def gamma_of(params: OperatorParams) -> float:
    """``gamma = pi * alpha * sqrt(beta)``; needs ``alpha > 0``."""
    if float(params.alpha) <= 0:
        raise ParameterError("edge formulas need alpha > 0")
    if params.beta <= 0:
        raise ParameterError("edge formulas need beta > 0")
    return params.gamma


def approx_eigenvalue(m: int, params: OperatorParams, edge: str = "positive") -> float:
    """``2 beta + 2 e^-gamma - 4 m gamma e^-gamma``, negated on the negative edge."""
    _check_edge(edge)
    if m < 0:
        raise ParameterError(f"m must be nonnegative, got {m}")
    g = gamma_of(params)
    eg = math.exp(-g)
    lam = 2.0 * params.beta + 2.0 * eg - 4.0 * m * g * eg
    return lam if edge == "positive" else -lam


def edge_shift(params: OperatorParams, edge: str = "positive") -> float:
    """Argument shift of the Hermite function: ``theta/(2 pi alpha)`` (minus ``1/(2 alpha)``)."""
    _check_edge(edge)
    a = float(params.alpha)
    shift = params.theta / (2.0 * math.pi * a)
    if edge == "negative":
        shift -= 0.5 / a
    return shift


def approx_eigenvector(
    m: int, params: OperatorParams, edge: str = "positive", epsilon: float = 0.5
) -> HermiteVector:
    """Sampled, shifted (and on the negative edge modulated) Hermite function.

    Regime violations do not raise; they are listed in ``warnings``.
    """
    _check_edge(edge)
    g = gamma_of(params)
    vec = sample_periodic(
        m, g, params.n, shift=edge_shift(params, edge), modulated=(edge == "negative")
    )
    notes = []
    if not 4.0 / params.n**2 <= g < 1.0:
        notes.append(f"gamma={g:.3g} outside [4/n^2, 1)")
    reg = sign_change_regime(m, g, params.n, epsilon)
    if not reg.regime_ok:
        notes.append(f"m={m} outside the sign-change regime for epsilon={epsilon}")
    if notes:
        vec = HermiteVector(
            vec.m, vec.gamma, vec.n, vec.shift, vec.samples, vec.modulated, vec.wrapped,
            tuple(notes),
        )
    return vec


@dataclass(frozen=True)
class ApproxEigenpair:
    m: int
    edge: str
    lam: float
    vector: HermiteVector


def approx_pair(m: int, params: OperatorParams, edge: str = "positive") -> ApproxEigenpair:
    return ApproxEigenpair(
        m, edge, approx_eigenvalue(m, params, edge), approx_eigenvector(m, params, edge)
    )


def translate_modulate(v, a: int, b: float) -> np.ndarray:
    """``T_a M_b v`` on the periodic lattice ``x = -n/2 .. n/2-1``.

    ``(M_b f)(x) = exp(2 pi i b x) f(x)`` with ``x`` the lattice coordinate,
    then ``(T_a g)(x) = g(x - a)`` cyclically.  The commutation relation
    ``T_a M_b = exp(-2 pi i a b) M_b T_a`` holds exactly when ``b n`` is an
    integer.
    """
    v = np.asarray(v)
    if v.ndim != 1:
        raise DimensionError("v must be a vector")
    if int(a) != a:
        raise ParameterError("cyclic translation needs an integer a")
    n = len(v)
    x = np.arange(n) - n // 2
    # reduce b*x mod 1 before exponentiating; keeps b = 1/2 exactly +-1
    phase = np.mod(b * x, 1.0)
    mod = np.exp(2j * np.pi * phase)
    return np.roll(mod * v, int(a))


def _half_period(params: OperatorParams) -> int:
    half = Fraction(1, 2) / params.alpha if isinstance(params.alpha, Fraction) else None
    if half is not None:
        if half.denominator != 1:
            raise NotRepresentableError(f"1/(2 alpha) = {half} is not an integer")
        return int(half)
    h = 0.5 / params.alpha
    if abs(h - round(h)) > 1e-9 * max(1.0, abs(h)):
        raise NotRepresentableError(f"1/(2 alpha) = {h} is not an integer")
    return int(round(h))


def negative_edge_map(v, params: OperatorParams) -> np.ndarray:
    """``M_{1/2} T_{1/(2 alpha)} v``, the unitary that flips the spectrum of ``P``.

    Only exact when ``1/(2 alpha)`` is an integer; otherwise raises
    :class:`NotRepresentableError` (use :func:`approx_eigenvector` instead).
    For real input the global phase is removed and a real vector returned.
    """
    if float(params.alpha) <= 0:
        raise ParameterError("negative edge map needs alpha > 0")
    v = np.asarray(v)
    a = _half_period(params)
    n = len(v)
    x = np.arange(n) - n // 2
    shifted = np.roll(v, a)
    out = np.where(x % 2 == 0, shifted, -shifted)
    return out if np.iscomplexobj(v) else out.real.astype(float)


@dataclass(frozen=True)
class RegimeDiagnostics:
    gamma: float
    epsilon: float
    m_max: int
    gamma_range_ok: bool  # 4/n^2 <= gamma < 1
    epsilon_window_ok: bool  # 4/n^(2-eps) < gamma < n^(-eps)
    sign_change_ok: bool  # m_max < n^eps - 1
    high_accuracy_range: tuple
    extended_range: tuple

    @property
    def all_ok(self) -> bool:
        return self.gamma_range_ok and self.epsilon_window_ok and self.sign_change_ok

    def as_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "epsilon": self.epsilon,
            "m_max": self.m_max,
            "gamma_range_ok": self.gamma_range_ok,
            "epsilon_window_ok": self.epsilon_window_ok,
            "sign_change_ok": self.sign_change_ok,
            "high_accuracy_m_max": self.high_accuracy_range[1],
            "extended_m_max": self.extended_range[1],
            "all_ok": self.all_ok,
        }


def validate_regime(params: OperatorParams, epsilon: float = 0.5, m_max: int = 5) -> RegimeDiagnostics:
    """Check the hypotheses under which the edge approximations are asserted.

    The high-accuracy range (error of order gamma^2) is ``0..m_max`` for a
    caller-chosen constant ``m_max``; the extended range (error of order
    gamma) reaches ``floor(sqrt(1/gamma))``.
    """
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    if m_max < 0:
        raise ParameterError("m_max must be nonnegative")
    g = gamma_of(params)
    n = params.n
    ext = int(math.floor(math.sqrt(1.0 / g)))
    return RegimeDiagnostics(
        gamma=g,
        epsilon=epsilon,
        m_max=m_max,
        gamma_range_ok=4.0 / n**2 <= g < 1.0,
        epsilon_window_ok=4.0 / n ** (2.0 - epsilon) < g < n ** (-epsilon),
        sign_change_ok=m_max < n**epsilon - 1,
        high_accuracy_range=(0, min(m_max, ext)),
        extended_range=(0, ext),
    )


@dataclass(frozen=True)
class MultiplicityReport:
    r: int
    claimed_multiplicity: int
    cluster_sizes: tuple
    multiplicity_holds: bool
    translation_commutator: float
    rayleigh_spread: float
    translation_invariant: bool
    skipped: bool = False
    notice: str = ""

    @property
    def min_cluster_size(self) -> int:
        return min(self.cluster_sizes) if self.cluster_sizes else 0


def _clusters(values: np.ndarray, tol: float) -> list[int]:
    sizes = [1]
    for a, b in zip(values[:-1], values[1:]):
        if abs(a - b) <= tol:
            sizes[-1] += 1
        else:
            sizes.append(1)
    return sizes


def multiplicity_check(params: OperatorParams, tol: float = 1e-8, seed: int = 0) -> MultiplicityReport:
    """Test eigenvalue multiplicities of ``P`` for ``alpha = r/n`` on the dense oracle.

    Reports the cluster sizes of the spectrum against the claimed lower bound
    ``n/r``, the commutator ``||P T v - T P v||`` for the translation by
    ``n/r``, and the spread of Rayleigh quotients of the translates
    ``T_{k n/r} phi_0``.
    """
    n = params.n
    if n > 512:
        raise OracleSizeError(f"multiplicity check uses the dense oracle, n <= 512 (got {n})")
    ra = Fraction(params.alpha).limit_denominator(10**9) * n if not isinstance(params.alpha, Fraction) else params.alpha * n
    if ra.denominator != 1 or ra <= 0:
        raise ParameterError(f"alpha * n = {ra} must be a positive integer")
    r = int(ra)
    P = build_periodic(params)
    if n % r:
        raise ParameterError(f"r={r} must divide n={n}")
    period = n // r
    if r == 1:
        return MultiplicityReport(
            r, n, (), False, 0.0, 0.0, True, skipped=True,
            notice="r = 1: translation by n is the identity, nothing to check",
        )
    spec = dense_eig_small(P.to_dense())
    sizes = tuple(_clusters(spec.values, tol))

    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n)
    comm = float(np.linalg.norm(P.apply(np.roll(v, period)) - np.roll(P.apply(v), period)))

    phi = approx_eigenvector(0, params).samples if float(params.alpha) > 0 else v
    rqs = []
    for k in range(r):
        t = np.roll(phi, k * period)
        rqs.append(float(t @ P.apply(t) / (t @ t)))
    spread = max(rqs) - min(rqs)
    return MultiplicityReport(
        r=r,
        claimed_multiplicity=period,
        cluster_sizes=sizes,
        multiplicity_holds=min(sizes) >= period,
        translation_commutator=comm,
        rayleigh_spread=spread,
        translation_invariant=spread <= tol and comm <= 1e-12 * max(1.0, np.linalg.norm(v)),
    )


def infinite_residual(
    m: int, params: OperatorParams, window_half_width: int, edge: str = "positive"
) -> Residual:
    """Residual of the shifted Hermite function under the operator on Z.

    The window is centred at the lattice site nearest the function's centre
    ``-shift``, so no periodic wrap and no truncation boundary enter; the
    operator is applied exactly at the interior sites.
    """
    _check_edge(edge)
    g = gamma_of(params)
    need = math.sqrt((m + 1) / g) + 10.0 / math.sqrt(g)
    if window_half_width < need:
        raise WindowError(f"window half width {window_half_width} < required {need:.1f}")
    w = int(window_half_width)
    shift = edge_shift(params, edge)
    centre = int(round(-shift))
    x = np.arange(centre - w, centre + w + 1, dtype=np.int64)
    vals = np.asarray(evaluate(m, g, x + shift), dtype=float)
    if edge == "negative":
        vals = np.where(x % 2 == 0, vals, -vals)
    hv = apply_infinite(params, WindowedVector(int(x[0]), vals))
    lam = approx_eigenvalue(m, params, edge)
    r = hv.values - lam * vals[1:-1]
    return Residual(float(np.max(np.abs(r))), float(np.linalg.norm(r)))


__all__ = [
    "EDGES",
    "ApproxEigenpair",
    "MultiplicityReport",
    "RegimeDiagnostics",
    "approx_eigenvalue",
    "approx_eigenvector",
    "approx_pair",
    "edge_shift",
    "gamma_of",
    "infinite_residual",
    "multiplicity_check",
    "negative_edge_map",
    "translate_modulate",
    "validate_regime",
]
